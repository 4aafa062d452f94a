#include "mero/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "mero/special.hpp"

namespace mero::classical {

namespace {

constexpr double hankel_phi = pi / 12;

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

bool is_real_integer(cplx w) { return std::abs(w.imag()) < 1e-12 && near_integer(w.real()); }

// Gamma(1 - w) z^{w-1}, continued to integer w >= 2 where Gamma(1 - w) has a pole
// and the Hankel integral of z^{w-1} vanishes: the limit keeps the residue times log z.
struct MellinFactor {
    cplx pref;
    bool with_log = false;
    cplx w;

    explicit MellinFactor(cplx w_) : w(w_)
    {
        if (is_real_integer(w) && std::lround(w.real()) >= 1) {
            const long N = std::lround(w.real());
            if (N == 1)
                throw DomainViolation("w = 1 is a pole");
            pref = (N % 2 == 0 ? 1.0 : -1.0) / std::tgamma(double(N));
            with_log = true;
            w = double(N);
        } else {
            pref = gamma_c(1.0 - w);
        }
    }

    cplx operator()(cplx z) const
    {
        cplx v = pref * pow_principal(z, w - 1.0);
        return with_log ? v * std::log(z) : v;
    }
};

double lfact(int k) { return std::lgamma(k + 1.0); }

// log cos(u), stable for large |Im u|
cplx log_cos(cplx u)
{
    if (std::abs(u.imag()) < 20)
        return std::log(std::cos(u));
    if (u.imag() > 0)
        return -I * u - std::log(2.0) + std::log(1.0 + std::exp(2.0 * I * u));
    return I * u - std::log(2.0) + std::log(1.0 + std::exp(-2.0 * I * u));
}

LaurentSeries exp_series(double rate)
{
    LaurentSeries f;
    f.n0 = 0;
    f.R_f = inf;
    f.coeff = [rate](int m) -> cplx { return m < 0 ? 0.0 : std::exp(m * std::log(rate) - lfact(m)); };
    f.log_abs = [rate](int m) { return m < 0 ? -inf : m * std::log(rate) - lfact(m); };
    f.kappa_closed = [rate](double r) { return std::exp(rate * r); };
    return f;
}

// s_m = a_m (2 pi)^{m+1} for e^{(1-alpha) z} / (1 - e^z); stays O(1) as m grows
double zeta_scaled(int m, double alpha)
{
    const double tp = 2 * pi, u = (1 - alpha) * tp;
    // beta_k = (B_k / k!) (2 pi)^k
    auto beta = [](int k) -> double {
        if (k == 0)
            return 1.0;
        if (k == 1)
            return -pi;
        if (k % 2 == 1)
            return 0.0;
        return ((k / 2) % 2 == 1 ? 2.0 : -2.0) * zeta_even(k);
    };
    CompensatedSum<double> s;
    double cj = 1; // u^j / j!
    for (int j = 0; j <= m + 1; ++j) {
        if (j > 0)
            cj *= u / j;
        if (j > 40 && cj < 1e-30)
            break;
        s.add(cj * beta(m + 1 - j));
    }
    return -s.value();
}

LaurentSeries zeta_series(double alpha)
{
    LaurentSeries f;
    f.n0 = 1;
    f.R_f = 2 * pi;
    f.coeff = [alpha](int m) -> cplx { return zeta_coeff(m, alpha); };
    f.log_abs = [alpha](int m) {
        if (m < -1)
            return -inf;
        double s = std::abs(zeta_scaled(m, alpha));
        return s == 0.0 ? -inf : std::log(s) - (m + 1) * std::log(2 * pi);
    };
    return f;
}

cplx airy_f(cplx u, double alpha) { return std::exp(u * u * u / 3.0 - alpha * u); }

// Laurent data of cos(alpha z^2) Gamma(-z^2) Gamma(z^2 + a) Gamma(z^2 + b) / Gamma(z^2 + c)
struct Hyp2f1Series {
    double Rs = 1;                // radius in s = z^2
    std::vector<cplx> s_coeff;    // s_coeff[j + 1] = coefficient of s^j, j >= -1
};

cplx hyp_f_of_s(cplx s, double alpha, double a, double b, double c)
{
    return std::exp(log_cos(alpha * s) + lgamma_c(-s) + lgamma_c(s + a) + lgamma_c(s + b) - lgamma_c(s + c));
}

double pole_distance(double a)
{
    // poles of Gamma(s + a) at s = -a - k
    double d = inf;
    for (int k = 0; k < 64; ++k)
        d = std::min(d, std::abs(a + k));
    return d;
}

Hyp2f1Series hyp_series(double alpha, double a, double b, double c)
{
    Hyp2f1Series h;
    h.Rs = std::min({1.0, pole_distance(a), pole_distance(b), pi / (2 * alpha)});
    const double rho = 0.9 * h.Rs;
    const int N = 1024, J = 64;
    std::vector<cplx> F(N);
    for (int k = 0; k < N; ++k) {
        cplx s = std::polar(rho, 2 * pi * k / N);
        F[k] = s * hyp_f_of_s(s, alpha, a, b, c);
    }
    // F(s) = s f(s) is analytic in |s| < Rs; its j-th coefficient is f's (j-1)-th
    for (int j = 0; j <= J + 1; ++j) {
        CompensatedSum<cplx> acc;
        for (int k = 0; k < N; ++k)
            acc.add(F[k] * std::polar(1.0, -2 * pi * double(k) * j / N));
        h.s_coeff.push_back(acc.value() / double(N) * std::pow(rho, -j));
    }
    return h;
}

std::string example_id(const ExampleSpec& s)
{
    char buf[160];
    switch (s.id) {
    case Example::airy:
        std::snprintf(buf, sizeof buf, "airy(alpha=%.17g,theta=%.17g)", s.alpha, s.theta_tilde);
        break;
    case Example::gauss_2f1:
        std::snprintf(buf, sizeof buf, "gauss_2f1(alpha=%.17g,a=%.17g,b=%.17g,c=%.17g,eps=%.17g)", s.alpha, s.a, s.b,
                      s.c, s.epsilon);
        break;
    case Example::hurwitz_zeta:
        std::snprintf(buf, sizeof buf, "hurwitz_zeta(eps=%.17g)", s.epsilon);
        break;
    default:
        std::snprintf(buf, sizeof buf, "%s(alpha=%.17g,eps=%.17g)", to_string(s.id).c_str(), s.alpha, s.epsilon);
    }
    return buf;
}

void require_alpha(double alpha, double hi = 1.0)
{
    if (!(alpha > 0 && alpha < hi))
        throw ConfigError("alpha out of range");
}

} // namespace

std::string to_string(Example e)
{
    switch (e) {
    case Example::gamma:
        return "gamma";
    case Example::recip_gamma:
        return "recip_gamma";
    case Example::riemann_zeta:
        return "riemann_zeta";
    case Example::hurwitz_zeta:
        return "hurwitz_zeta";
    case Example::gauss_2f1:
        return "gauss_2f1";
    case Example::airy:
        return "airy";
    }
    return "?";
}

Example parse_example(const std::string& s)
{
    for (Example e : {Example::gamma, Example::recip_gamma, Example::riemann_zeta, Example::hurwitz_zeta,
                      Example::gauss_2f1, Example::airy})
        if (to_string(e) == s)
            return e;
    throw ConfigError("unknown example '" + s + "'");
}

double zeta_coeff(int m, double alpha)
{
    if (m < -1)
        return 0.0;
    return zeta_scaled(m, alpha) * std::pow(2 * pi, -(m + 1));
}

double airy_coeff(int m, double alpha)
{
    if (m < 0)
        return 0.0;
    CompensatedSum<double> s;
    for (int l = 0; 3 * l <= m; ++l) {
        double sign = (m - l) % 2 == 0 ? 1.0 : -1.0;
        double la = (m - 3 * l) * (alpha > 0 ? std::log(alpha) : -inf) - lfact(l) - lfact(m - 3 * l) -
                    l * std::log(3.0);
        if (m - 3 * l == 0)
            la = -lfact(l) - l * std::log(3.0);
        s.add(sign * std::exp(la));
    }
    return s.value();
}

TransformProblem make_problem(const ExampleSpec& s, Exec exec)
{
    TransformProblem p;
    p.id = example_id(s);
    p.exec = exec;
    p.moments = shared_moments(p.id);
    const double alpha = s.alpha, eps = s.epsilon;
    if (!(eps > 0))
        throw ConfigError("epsilon must be positive");
    auto hankel = [eps](cplx, cplx) { return make_hankel(eps, false); };
    auto hankel_deformed = [eps](cplx, cplx) { return make_hankel(eps, true); };

    switch (s.id) {
    case Example::gamma:
    case Example::recip_gamma: {
        require_alpha(alpha);
        if (s.id == Example::gamma) {
            p.kernel.K = [alpha](cplx w, cplx z) {
                if (is_real_integer(w))
                    throw DomainViolation("Gamma kernel needs w outside the integers");
                return -I * pow_principal(z, w - 1.0) * std::exp(alpha * z) / (2.0 * std::sin(pi * w));
            };
        } else {
            p.kernel.K = [alpha](cplx w, cplx z) {
                return pow_principal(z, -w) * std::exp(alpha * z) / (2.0 * pi * I);
            };
        }
        p.kernel.delta1 = alpha;
        p.function.f = [alpha](cplx u) { return std::exp((1 - alpha) * u); };
        p.function.laurent = exp_series(1 - alpha);
        p.function.delta2 = 1 - alpha;
        p.in_U = [alpha](cplx g) { return g != 0.0 && (alpha + (1 - alpha) * g).real() > 0; };
        p.contours = {hankel, hankel_deformed, hankel};
        p.split = 0;
        break;
    }
    case Example::riemann_zeta: {
        require_alpha(alpha);
        p.kernel.K = [alpha](cplx w, cplx z) { return MellinFactor(w)(z) * std::exp(alpha * z) / (2.0 * pi * I); };
        p.kernel.delta1 = alpha;
        p.function.f = [alpha](cplx u) { return std::exp((1 - alpha) * u) / (1.0 - std::exp(u)); };
        p.function.laurent = zeta_series(alpha);
        p.function.delta2 = 1 - alpha;
        p.function.poles = [](cplx g, double maxmod) {
            std::vector<cplx> out;
            for (int k = 1; 2 * pi * k / std::abs(g) <= maxmod; ++k) {
                out.push_back(2 * pi * I * double(k) / g);
                out.push_back(-2 * pi * I * double(k) / g);
            }
            return out;
        };
        p.in_W = [](cplx w) { return !(is_real_integer(w) && std::lround(w.real()) == 1); };
        p.in_U = [](cplx g) { return g.real() > 0 && std::abs(std::arg(g)) < pi / 2 - hankel_phi; };
        auto cf = [eps](cplx, cplx g) {
            return make_hankel(g == 0.0 ? eps : std::min(eps, pi / std::abs(g)), false);
        };
        p.contours = {cf, hankel_deformed, cf};
        p.split = 0;
        break;
    }
    case Example::hurwitz_zeta: {
        p.kernel.K = [](cplx w, cplx z) {
            // 1 / (e^{-z} - 1) = e^z / (1 - e^z), evaluated on the side that does not overflow
            cplx q = z.real() < 0 ? std::exp(z) / (1.0 - std::exp(z)) : 1.0 / (std::exp(-z) - 1.0);
            return MellinFactor(w)(z) * q / (2.0 * pi * I);
        };
        p.kernel.k0 = 1;
        p.kernel.delta1 = 1.0;
        p.function.f = [](cplx u) { return std::exp(u); };
        p.function.laurent = exp_series(1.0);
        p.in_W = [](cplx w) { return !(is_real_integer(w) && std::lround(w.real()) == 1); };
        p.in_U = [](cplx g) { return g != 0.0 && g.real() > -1; };
        p.contours = {hankel, hankel_deformed, hankel};
        p.split = 0;
        break;
    }
    case Example::gauss_2f1: {
        require_alpha(alpha, pi);
        const double a = s.a, b = s.b, c = s.c;
        for (double v : {a, b})
            if (v <= 0 && near_integer(v))
                throw ConfigError("2F1 needs a and b outside the nonpositive integers");
        auto series = std::make_shared<Hyp2f1Series>(hyp_series(alpha, a, b, c));
        p.kernel.K = [alpha](cplx w, cplx z) {
            cplx s2 = z * z;
            return z * std::exp(s2 * std::log(-w) - log_cos(alpha * s2));
        };
        p.function.f = [alpha, a, b, c](cplx u) { return hyp_f_of_s(u * u, alpha, a, b, c); };
        LaurentSeries f;
        f.n0 = 2;
        f.R_f = std::sqrt(series->Rs);
        f.window = 64;
        f.coeff = [series](int m) -> cplx {
            if (m < -2 || m % 2 != 0)
                return 0.0;
            std::size_t j = static_cast<std::size_t>(m / 2 + 1);
            if (j >= series->s_coeff.size())
                throw DomainViolation("2F1 Laurent coefficient beyond the computed window");
            return series->s_coeff[j];
        };
        p.function.laurent = f;
        p.in_W = [alpha](cplx w) { return w != 0.0 && std::abs(std::arg(-w)) < alpha; };
        p.in_U = [](cplx g) { return g != 0.0 && std::abs(std::arg(g)) < pi / 16; };
        p.contours.original = [eps](cplx, cplx) { return make_wedge(-pi / 4, pi / 4, eps); };
        p.contours.deformed = [](cplx, cplx) { return make_wedge(-pi / 4, pi / 4, 0.0); };
        p.contours.borel = p.contours.original;
        p.split = 0;
        break;
    }
    case Example::airy: {
        require_alpha(alpha);
        const double th = s.theta_tilde;
        if (!(th >= pi / 6 - 1e-12 && th <= pi / 3 + 1e-12))
            throw ConfigError("Airy theta_tilde must lie in [pi/6, pi/3]");
        p.kernel.K = [alpha](cplx w, cplx z) { return std::exp(-z * w + alpha * z); };
        p.kernel.c_w = [](cplx) { return 1.0; };
        p.function.f = [alpha](cplx u) { return airy_f(u, alpha); };
        LaurentSeries f;
        f.n0 = 0;
        f.R_f = inf;
        f.coeff = [alpha](int m) -> cplx { return airy_coeff(m, alpha); };
        p.function.laurent = f;
        p.function.c = 1;
        p.function.c_tilde = [](cplx) { return 1.0; };
        p.in_W = [alpha, th](cplx w) {
            return (w * std::polar(1.0, th)).real() - alpha * std::cos(th) > 0 &&
                   (w * std::polar(1.0, -th)).real() - alpha * std::cos(th) > 0;
        };
        p.in_U = [th](cplx g) {
            const double tg = std::arg(g);
            return g != 0.0 && std::cos(3 * (th + tg)) <= 1e-12 && std::cos(3 * (th - tg)) <= 1e-12 &&
                   std::cos(th + tg) > 0 && std::cos(th - tg) > 0;
        };
        p.contours.original = [th](cplx, cplx) { return make_wedge(-th, th, 0.0); };
        p.contours.deformed = p.contours.original;
        p.contours.borel = p.contours.original;
        p.split = 0;
        break;
    }
    }
    return p;
}

namespace {

TransformProblem cached(const ExampleSpec& s)
{
    return make_problem(s);
}

} // namespace

cplx gamma_eval(cplx w, cplx gamma, double alpha, double tol)
{
    return evaluate_g(cached({Example::gamma, alpha}), w, gamma, tol);
}

cplx recip_gamma_eval(cplx w, cplx gamma, double alpha, double tol)
{
    return evaluate_g(cached({Example::recip_gamma, alpha}), w, gamma, tol);
}

cplx zeta_eval(cplx w, cplx gamma, double alpha, double tol)
{
    return evaluate_g(cached({Example::riemann_zeta, alpha}), w, gamma, tol);
}

cplx hurwitz_eval(cplx w, double q, double tol)
{
    if (!(q > 0))
        throw DomainViolation("Hurwitz zeta needs q > 0");
    ExampleSpec s;
    s.id = Example::hurwitz_zeta;
    auto p = cached(s);
    if (q == 1.0)
        return moment_h(p, 0, w, tol);
    return evaluate_g(p, w, q - 1.0, tol);
}

cplx hurwitz_moment(int m, cplx w, double tol)
{
    ExampleSpec s;
    s.id = Example::hurwitz_zeta;
    return moment_h(cached(s), m, w, tol);
}

cplx gauss2f1_eval(cplx w, cplx gamma, double alpha, double a, double b, double c, double tol)
{
    ExampleSpec s;
    s.id = Example::gauss_2f1;
    s.alpha = alpha;
    s.a = a;
    s.b = b;
    s.c = c;
    return evaluate_g(cached(s), w, gamma, tol);
}

cplx gauss2f1_value(cplx w, double a, double b, double c, double alpha, double tol)
{
    cplx g = gauss2f1_eval(w, 1.0, alpha, a, b, c, tol);
    // the contour passes right of s = 0, so the residue there (the constant term 1) is added back
    return 1.0 + g / (pi * I) * std::exp(lgamma_c(c) - lgamma_c(a) - lgamma_c(b));
}

cplx airy_eval(cplx w, cplx gamma, double alpha, double theta_tilde, double tol)
{
    ExampleSpec s;
    s.id = Example::airy;
    s.alpha = alpha;
    s.theta_tilde = theta_tilde;
    return evaluate_g(cached(s), w, gamma, tol);
}

namespace {

double airy_delta1(const ExampleSpec& s, cplx w)
{
    const double th = s.theta_tilde;
    double d = std::min((w * std::polar(1.0, th)).real(), (w * std::polar(1.0, -th)).real()) -
               s.alpha * std::cos(th);
    if (!(d > 0))
        throw DomainViolation("w outside the Airy decay region");
    return 0.999 * d;
}

int hankel_k0(const ExampleSpec& s, cplx w)
{
    double k = s.id == Example::recip_gamma ? w.real() : 1 - w.real();
    if (s.id == Example::hurwitz_zeta)
        return 1;
    return std::max(0, static_cast<int>(std::ceil(k - 1e-12)));
}

} // namespace

DecayHypotheses thm1_hypotheses(const ExampleSpec& s, cplx w, cplx gamma)
{
    DecayHypotheses h;
    auto p = make_problem(s);
    if (p.in_U && !p.in_U(gamma))
        throw DomainViolation("gamma outside the U-domain of " + p.id);
    switch (s.id) {
    case Example::gamma:
    case Example::recip_gamma:
    case Example::riemann_zeta: {
        if (!(std::abs(gamma) <= 1))
            throw DomainViolation("the Hankel-example envelopes are declared for |gamma| <= 1");
        h.delta2 = 1 - s.alpha;
        const double top = s.alpha * std::cos(hankel_phi);
        if (!(top > h.delta2))
            throw DomainViolation("alpha too small: delta1 must exceed 1 - alpha", "HypothesisViolation");
        h.delta1 = 0.5 * (h.delta2 + top);
        h.k0 = hankel_k0(s, w);
        h.n0 = s.id == Example::riemann_zeta ? 1 : 0;
        h.d = 2;
        Contour c = p.contours.deformed(w, gamma);
        h.b = cos_theta_bound(c);
        const double extent = 40.0 / (top - h.delta1), d1 = h.delta1, d2 = h.delta2;
        const int k0 = h.k0;
        double cw = sampled_sup(
            [&](cplx z) {
                double az = std::abs(z);
                return std::abs(p.kernel.K(w, z)) * std::pow(az, k0) * std::exp(d1 * az);
            },
            c, extent);
        h.c_w = [cw](cplx) { return cw; };
        if (s.id == Example::riemann_zeta) {
            double ct = sampled_sup(
                [&](cplx z) {
                    double az = std::abs(z);
                    return std::abs(p.function.f(gamma * z)) * std::abs(gamma) * az * std::exp(-d2 * az);
                },
                c, extent);
            h.c = ct;
            h.c_tilde = [ct](cplx) { return ct; };
        } else {
            h.c = 1;
            h.c_tilde = [](cplx) { return 1.0; };
        }
        return h;
    }
    case Example::airy:
        h.delta1 = airy_delta1(s, w);
        h.delta2 = 0;
        h.k0 = 0;
        h.n0 = 0;
        h.d = 2;
        h.b = 1;
        h.c = 1;
        h.c_w = [](cplx) { return 1.0; };
        h.c_tilde = [](cplx) { return 1.0; };
        return h;
    default:
        throw ConfigError("no first-theorem hypotheses declared for " + to_string(s.id));
    }
}

DecayHypotheses thm77_hypotheses(const ExampleSpec& s, cplx w, cplx gamma)
{
    DecayHypotheses h;
    auto p = make_problem(s);
    if (p.in_U && !p.in_U(gamma))
        throw DomainViolation("gamma outside the U-domain of " + p.id);
    if (s.id == Example::hurwitz_zeta) {
        const double g = std::abs(gamma), top = std::cos(hankel_phi);
        if (!(g < top))
            throw DomainViolation("single-pole bound needs |gamma| < cos(phi)", "HypothesisViolation");
        h.delta_tilde = g;
        h.delta1 = 0.5 * (g + top);
        h.k0 = 1;
        h.n0 = 0;
        h.d = 2;
        Contour c = p.contours.deformed(w, gamma);
        h.b = cos_theta_bound(c);
        const double d1 = h.delta1, extent = 40.0 / (top - d1);
        double cw = sampled_sup(
            [&](cplx z) {
                double az = std::abs(z);
                return std::abs(p.kernel.K(w, z)) * az * std::exp(d1 * az);
            },
            c, extent);
        h.c_w = [cw](cplx) { return cw; };
        h.c_tilde = [](cplx) { return 1.0; };
        h.C77 = [](int, cplx) { return 1.0; };
        return h;
    }
    if (s.id == Example::airy) {
        h = thm1_hypotheses(s, w, gamma);
        h.delta_tilde = 0;
        const auto f = p.function.laurent;
        h.C77 = [f](int n, cplx) { return std::max(kappa_tail(f, n, 1.0), 1 + kappa_range(f, 0, n, 1.0)); };
        return h;
    }
    throw ConfigError("no single-pole hypotheses declared for " + to_string(s.id));
}

double predicted_radius(const ExampleSpec& s, cplx w)
{
    switch (s.id) {
    case Example::gamma:
    case Example::recip_gamma:
        return s.alpha / (1 - s.alpha);
    case Example::hurwitz_zeta:
        return std::cos(hankel_phi);
    case Example::airy:
        return airy_delta1(s, w) / (1 + s.alpha);
    default:
        throw ConfigError("no convergence radius declared for " + to_string(s.id));
    }
}

} // namespace mero::classical
