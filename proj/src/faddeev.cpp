#include "mero/faddeev.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "mero/special.hpp"

namespace mero::faddeev {

namespace {

double cos_gamma(double theta_tilde, cplx gamma) { return std::cos(theta_tilde + std::arg(gamma)); }

void require_theta(double theta_tilde)
{
    if (!(std::abs(theta_tilde) < pi / 2))
        throw DomainViolation("theta_tilde must lie in (-pi/2, pi/2)");
}

// one table per rotation angle, shared by every problem built for it
std::shared_ptr<MomentTable> shared_moments(const std::string& id)
{
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<MomentTable>> tables;
    std::lock_guard lk(mu);
    auto& t = tables[id];
    if (!t)
        t = std::make_shared<MomentTable>(id);
    return t;
}

// 1 / (1 + e^{-iu}) without overflow
cplx sigma(cplx u)
{
    if (u.imag() > 0) {
        cplx e = std::exp(I * u);
        return e / (e + 1.0);
    }
    return 1.0 / (1.0 + std::exp(-I * u));
}

} // namespace

bool Domain::in_W(cplx w) const
{
    const double c = std::cos(theta_tilde);
    const double x = std::abs(w) * std::cos(theta_tilde + std::arg(w));
    return -pi * c + delta < x && x < pi * c - delta;
}

bool Domain::in_U(cplx gamma) const { return gamma != 0.0 && cos_gamma(theta_tilde, gamma) > 1e-12; }

double delta_for(cplx w, double theta_tilde)
{
    require_theta(theta_tilde);
    double margin = pi * std::cos(theta_tilde) - std::abs((w * std::polar(1.0, theta_tilde)).real());
    if (!(margin > 0))
        throw DomainViolation("w = " + format_complex(w) + " outside the Faddeev strip");
    return 0.999 * margin;
}

double epsilon_for(double theta_tilde, cplx gamma)
{
    require_theta(theta_tilde);
    double e = std::cos(theta_tilde);
    if (gamma != 0.0) {
        double cg = cos_gamma(theta_tilde, gamma);
        if (!(cg > 1e-12))
            throw DomainViolation("gamma = " + format_complex(gamma) + " outside the Faddeev sector");
        e = std::min(e, pi / std::abs(gamma) * cg);
    }
    return std::min(0.5, 0.5 * e);
}

cplx inv_sinh(cplx u)
{
    if (u.real() >= 1) {
        cplx e = std::exp(-u);
        return 2.0 * e / (1.0 - e * e);
    }
    if (u.real() <= -1) {
        cplx e = std::exp(u);
        return -2.0 * e / (1.0 - e * e);
    }
    return 1.0 / std::sinh(u);
}

cplx kernel(cplx w, cplx z)
{
    const cplx u = pi * z;
    if (u.real() >= 1)
        return 2.0 * std::exp(w * z - u) / (1.0 - std::exp(-2.0 * u)) / z;
    if (u.real() <= -1)
        return -2.0 * std::exp(w * z + u) / (1.0 - std::exp(2.0 * u)) / z;
    return std::exp(w * z) / (std::sinh(u) * z);
}

namespace {

double log_abs_coeff(int k)
{
    if (k == -1)
        return 0.0;
    const int m = (k + 1) / 2;
    // |a_{2m-1}| = 2 zeta(2m) (1 - 2^{1-2m}) / pi^{2m}
    return std::log(2 * zeta_even(2 * m) * (1 - std::pow(2.0, 1 - 2 * m))) - 2 * m * std::log(pi);
}

} // namespace

cplx coeff(int k)
{
    if (k < -1 || k % 2 == 0)
        return 0.0;
    if (k == -1)
        return 1.0;
    const int m = (k + 1) / 2;
    const double sign = m % 2 == 0 ? 1.0 : -1.0;
    if (m <= 10)
        return 2 * (1 - std::pow(2.0, 2 * m - 1)) * bernoulli_over_factorial(2 * m);
    return sign * std::exp(log_abs_coeff(k));
}

LaurentSeries laurent()
{
    LaurentSeries f;
    f.n0 = 1;
    f.R_f = pi;
    f.coeff = coeff;
    f.log_abs = [](int k) { return k < -1 || k % 2 == 0 ? -inf : log_abs_coeff(k); };
    f.kappa_closed = [](double r) { return 1.0 / std::sin(r); };
    return f;
}

TransformProblem problem(double theta_tilde, Exec exec)
{
    require_theta(theta_tilde);
    TransformProblem p;
    char buf[64];
    std::snprintf(buf, sizeof buf, "faddeev(theta=%.17g)", theta_tilde);
    p.id = buf;
    p.kernel.K = kernel;
    p.kernel.k0 = 2;
    p.kernel.poles = [](cplx) {
        std::vector<cplx> out{0.0};
        for (int k = 1; k <= 8; ++k) {
            out.push_back(cplx(0, k));
            out.push_back(cplx(0, -k));
        }
        return out;
    };
    p.function.f = inv_sinh;
    p.function.laurent = laurent();
    p.function.c = cF;
    p.function.c_tilde = [theta_tilde](cplx gamma) { return cF / cos_gamma(theta_tilde, gamma); };
    p.function.envelope_from = 2.0;
    p.function.poles = [](cplx gamma, double maxmod) {
        std::vector<cplx> out;
        for (int k = 1; pi * k / std::abs(gamma) <= maxmod; ++k) {
            out.push_back(I * pi * double(k) / gamma);
            out.push_back(-I * pi * double(k) / gamma);
        }
        return out;
    };
    p.contours.original = [theta_tilde](cplx, cplx gamma) {
        return make_rotated_line(theta_tilde, epsilon_for(theta_tilde, gamma));
    };
    p.contours.deformed = [theta_tilde](cplx, cplx) { return make_rotated_line(theta_tilde, 0.0); };
    p.contours.borel = p.contours.original;
    p.in_W = [theta_tilde](cplx w) { return Domain{theta_tilde, 0.0}.in_W(w); };
    p.in_U = [theta_tilde](cplx gamma) { return Domain{theta_tilde, 0.0}.in_U(gamma); };
    p.split = 1;
    p.moments = shared_moments(p.id);
    p.exec = exec;
    return p;
}

QuadratureResult eval_gF_full(cplx w, cplx gamma, double theta_tilde, double tol)
{
    return evaluate_g_full(problem(theta_tilde), w, gamma, tol);
}

cplx eval_gF(cplx w, cplx gamma, double theta_tilde, double tol)
{
    return eval_gF_full(w, gamma, theta_tilde, tol).value;
}

cplx eval_S(cplx w, cplx gamma, double theta_tilde, double tol)
{
    return std::exp(eval_gF(w, gamma, theta_tilde, tol) / 4.0);
}

cplx h1_closed(cplx w) { return -2.0 * I * sigma(w); }

cplx P2n(cplx w, cplx gamma, int n, double theta_tilde, double tol)
{
    if (n < 0)
        throw DomainViolation("P2n needs n >= 0");
    auto p = problem(theta_tilde);
    CompensatedSum<cplx> s;
    for (int m = 0; m <= n; ++m)
        s.add(coeff(2 * m - 1) * std::pow(gamma, 2 * m - 1) * moment_h(p, 2 * m - 1, w, tol));
    return s.value() / 4.0;
}

double rn_root(int n)
{
    if (n < 1)
        throw DomainViolation("rn_root needs n >= 1");
    auto F = [n](double r) {
        double s = std::sin(r), c = std::cos(r);
        return cF * (n + 1) * s * s + n * r * s + r * r * c;
    };
    auto dF = [n](double r) {
        double s = std::sin(r), c = std::cos(r);
        return 2 * cF * (n + 1) * s * c + n * s + n * r * c + 2 * r * c - r * r * s;
    };
    double a = pi / 2, b = pi;
    if (!(F(a) > 0 && F(b) < 0)) {
        // dense scan for a sign change
        const int N = 4096;
        bool found = false;
        for (int k = 0; k < N && !found; ++k) {
            double x0 = pi * k / N, x1 = pi * (k + 1) / N;
            if (F(x0) > 0 && F(x1) <= 0) {
                a = x0;
                b = x1;
                found = true;
            }
        }
        if (!found)
            throw non_convergence("no sign change for the r_n equation");
    }
    for (int it = 0; it < 60; ++it) {
        double m = 0.5 * (a + b);
        (F(m) > 0 ? a : b) = m;
    }
    double r = 0.5 * (a + b);
    for (int it = 0; it < 4; ++it) {
        double step = F(r) / dF(r);
        r -= step;
        if (std::abs(step) < 1e-15)
            break;
    }
    return r;
}

double cprime(int n)
{
    double r = rn_root(n);
    return std::pow(r, -n) * (cF / r + 1.0 / std::sin(r));
}

Tiers CtildeF(int n, double theta_tilde, double theta_gamma)
{
    require_theta(theta_tilde);
    if (n < 1)
        throw DomainViolation("CtildeF needs n >= 1");
    const double cg = std::cos(theta_tilde + theta_gamma);
    if (!(cg > 0))
        throw inadmissible("cos(theta~ + theta_gamma) must be positive");
    const double den = (1 - std::exp(-2 * pi * std::cos(theta_tilde))) * cg;
    const double lead = 4 * std::sqrt(2.0) / (pi * std::sqrt(4.0 * n - 3)) * std::pow(1 - 0.5 / n, -(2 * n - 1));
    Tiers t;
    t.exact = lead * cprime(2 * n) / den;
    t.envelope = lead * (std::sqrt(2.0) + 4 * cF / (3 * pi)) * std::pow(4 / (3 * pi), 2 * n) / den;
    t.weakest = 3 * std::pow(2 / pi, 2 * n) / den;
    if (!(t.exact <= t.envelope && t.envelope <= t.weakest))
        throw NumericalError("TierOrder", "constant tiers out of order at n = " + std::to_string(n));
    return t;
}

std::vector<ErrorCertificate> verify_FE(cplx w, cplx gamma, double theta_tilde, int n)
{
    const double delta = delta_for(w, theta_tilde);
    Tiers t = CtildeF(n, theta_tilde, std::arg(gamma));
    const double scale = std::pow(std::abs(gamma), 2 * n) * std::pow(delta, -2 * n) * std::tgamma(2 * n + 1.0);
    const double tol = measurement_tol(t.exact * scale);

    auto p = problem(theta_tilde);
    auto g = evaluate_g_full(p, w, gamma, tol);
    CompensatedSum<cplx> s;
    double err = g.error;
    for (int m = 0; m <= n; ++m) {
        cplx a = coeff(2 * m - 1), gm = std::pow(gamma, 2 * m - 1);
        auto e = moment_h_full(p, 2 * m - 1, w, tol);
        s.add(a * gm * e.value);
        err += std::abs(a * gm) * e.error;
    }
    const double measured = std::abs(g.value - s.value()) / 4;
    err /= 4;

    std::vector<ErrorCertificate> out;
    const std::pair<const char*, double> tiers[] = {
        {"FE.exact", t.exact}, {"FE.envelope", t.envelope}, {"FE.weakest", t.weakest}};
    for (auto [name, C] : tiers) {
        ErrorCertificate c;
        c.theorem = name;
        c.n = n;
        c.w = w;
        c.gamma = gamma;
        c.constant = C;
        c.bound = C * scale;
        c.measured = measured;
        c.quad_error = err;
        c.pass = measured <= c.bound * (1 + 1e-9) + err;
        if (!c.pass)
            c.reason = "measured remainder exceeds the bound";
        out.push_back(c);
    }
    return out;
}

cplx BwF(cplx w, cplx xi, double tol)
{
    if (std::abs(w.imag()) < 1e-12 && near_integer((w.real() - pi) / (2 * pi)))
        throw DomainViolation("B_w is undefined for w in pi + 2 pi Z");
    for (cplx p : BwF_poles(w, std::abs(xi) + 1.0))
        if (std::abs(xi - p) < 1e-6 * std::max(1.0, std::abs(p)))
            throw pole_too_close("xi = " + format_complex(xi) + " is at a pole of B_w");
    auto term = [&](int n) {
        cplx shift = I * xi / (pi * n);
        double sign = n % 2 == 0 ? 1.0 : -1.0;
        return sign / (double(n) * n) * (sigma(w + shift) + sigma(w - shift));
    };
    // the prefactor 2/(i pi^2) has modulus below 1/4; scale the tolerance accordingly
    auto s = sum_alternating(term, 1, 4 * tol);
    return 2.0 / (I * pi * pi) * s.value;
}

std::vector<cplx> BwF_poles(cplx w, double max_modulus)
{
    std::vector<cplx> out;
    const double span = max_modulus / pi;
    const int jlo = static_cast<int>(std::floor((w.real() - pi - span) / (2 * pi))) - 1;
    const int jhi = static_cast<int>(std::ceil((w.real() - pi + span) / (2 * pi))) + 1;
    for (int j = jlo; j <= jhi; ++j) {
        cplx base = pi - w + 2 * pi * j;
        if (std::abs(base) == 0.0)
            continue;
        for (int n = 1; pi * n * std::abs(base) <= max_modulus; ++n) {
            out.push_back(I * pi * double(n) * base);
            out.push_back(-I * pi * double(n) * base);
        }
    }
    return out;
}

cplx inv_laplace_phi(cplx z, cplx xi)
{
    auto term = [&](int n) {
        double sign = n % 2 == 0 ? 1.0 : -1.0;
        return cplx(sign / (double(n) * n)) * std::cos(z * xi / (pi * n));
    };
    auto s = sum_alternating(term, 1, 1e-15);
    return 2.0 * z / (pi * pi) * s.value;
}

KernelMoment kernel_moment(cplx w)
{
    return [w](cplx p, int k, cplx xi) -> cplx {
        if (k != 1)
            throw ConfigError("the Faddeev pole parts are simple; moment order " + std::to_string(k) + " requested");
        return h1_closed(w + xi / p) / p;
    };
}

std::vector<PolePart> pole_shell(int n)
{
    cplx b = n % 2 == 0 ? 1.0 : -1.0;
    return {{I * pi * double(n), {b}}, {-I * pi * double(n), {b}}};
}

BorelFunction borel_function(cplx w)
{
    BorelFunction B;
    B.eval = [w](cplx xi) { return BwF(w, xi); };
    B.poles = [w](double maxmod) { return BwF_poles(w, maxmod); };
    return B;
}

DecayHypotheses hypotheses(cplx w, cplx gamma, double theta_tilde, int n)
{
    const double dF = delta_for(w, theta_tilde);
    if (!(cos_gamma(theta_tilde, gamma) > 1e-12))
        throw DomainViolation("gamma outside the Faddeev sector");
    const int k = n - 1;
    const double alpha = k >= 1 ? k / (k + 1.0) : 0.5;
    DecayHypotheses h;
    h.delta1 = alpha * dF;
    h.delta2 = 0;
    h.c = cF;
    h.b = 1;
    h.d = 2;
    h.k0 = 2;
    h.n0 = 1;
    const double cw = std::sqrt(2.0) / (std::sqrt(pi) * (1 - std::exp(-2 * pi * std::cos(theta_tilde)))) /
                      ((1 - alpha) * dF);
    h.c_w = [cw](cplx) { return cw; };
    h.c_tilde = [theta_tilde](cplx g) { return cF / cos_gamma(theta_tilde, g); };
    // x / sinh x <= c^F only once x >= 0.70
    h.f_envelope_from = 2.0;
    return h;
}

DecayHypotheses hypotheses_on(const Contour& c, cplx w, cplx gamma, double theta_tilde, int n)
{
    DecayHypotheses h = hypotheses(w, gamma, theta_tilde, n);
    const double extent = 30.0 / h.delta1, d1 = h.delta1, from = h.f_envelope_from;
    double cw = std::max(h.cw(w), sampled_sup(
                                      [&](cplx z) {
                                          double az = std::abs(z);
                                          return std::abs(kernel(w, z)) * az * az * std::exp(d1 * az);
                                      },
                                      c, extent));
    double ct = std::max(h.ct(gamma), sampled_sup(
                                          [&](cplx z) {
                                              cplx u = gamma * z;
                                              return std::abs(u) < from ? 0.0 : std::abs(inv_sinh(u) * u);
                                          },
                                          c, extent));
    h.c_w = [cw](cplx) { return cw; };
    h.c_tilde = [ct](cplx) { return ct; };
    h.b = cos_theta_bound(c);
    return h;
}

Contour v_contour(double theta_tilde, double eps, double beta)
{
    const cplx apex = I * eps * std::polar(1.0, theta_tilde);
    Contour c;
    c.segments.push_back(ray(apex, theta_tilde + pi - beta, true));
    c.segments.push_back(ray(apex, theta_tilde + beta, false));
    return c;
}

ErrorCertificate thm1(cplx w, cplx gamma, double theta_tilde, int n)
{
    return thm1_bound(problem(theta_tilde), hypotheses(w, gamma, theta_tilde, n), n, w, gamma);
}

ErrorCertificate thm15(cplx w, cplx gamma, double theta_tilde, int n)
{
    auto p = problem(theta_tilde);
    Contour bar = v_contour(theta_tilde, epsilon_for(theta_tilde, gamma), pi / 8);
    DecayHypotheses h = hypotheses_on(bar, w, gamma, theta_tilde, n);
    const auto f = laurent();
    const double rho = min_modulus(bar), lo = std::abs(gamma) * (1 + 1e-6);
    if (!(lo < pi))
        throw DomainViolation("inner-contour bound needs |gamma| < R_f");
    double r = pi / 2;
    minimize_over_r([&](double x) { return thm15_value(f, h, n, x, rho, w, gamma).bound; }, lo, pi * (1 - 1e-9), &r);
    return thm15_bound(p, h, n, r, bar, w, gamma);
}

ErrorCertificate thm175(cplx w, cplx gamma, double theta_tilde, int n)
{
    auto p = problem(theta_tilde);
    Contour c = p.contours.borel(w, gamma);
    DecayHypotheses h = hypotheses_on(c, w, gamma, theta_tilde, n);
    const double eps = epsilon_for(theta_tilde, gamma), ag = std::abs(gamma);
    h.b_of_r = [eps, ag](double r) {
        double R = r / ag;
        return R > eps ? std::sqrt(1 - eps * eps / (R * R)) : 0.0;
    };
    h.L_of_r = [eps, ag](double r) {
        double R = r / ag;
        return R > eps ? ag * 2 * std::sqrt(R * R - eps * eps) : 0.0;
    };
    return thm175_bound(p, h, n, w, gamma);
}

} // namespace mero::faddeev
