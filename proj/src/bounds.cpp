#include "mero/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace mero {

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

double safe_eval(const std::function<double(double)>& F, double r)
{
    try {
        double v = F(r);
        return std::isfinite(v) ? v : inf;
    } catch (const Error&) {
        return inf;
    }
}

void require_valid(const DecayHypotheses& h, double delta)
{
    if (!(delta > 0))
        throw DomainViolation("hypotheses need delta > 0", "HypothesisViolation");
    if (!(h.b > 0) && !h.b_of_r)
        throw DomainViolation("hypotheses need b > 0", "HypothesisViolation");
    if (h.d < 1)
        throw DomainViolation("hypotheses need d >= 1", "HypothesisViolation");
}

// Solve the 3x3 normal equations for y ~ c0 + c1 x + c2 log x.
std::array<double, 3> fit3(const std::vector<double>& x, const std::vector<double>& y)
{
    double A[3][4] = {};
    for (std::size_t i = 0; i < x.size(); ++i) {
        double phi[3] = {1.0, x[i], std::log(x[i])};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c)
                A[r][c] += phi[r] * phi[c];
            A[r][3] += phi[r] * y[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col]))
                piv = r;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col)
                continue;
            double f = A[r][col] / A[col][col];
            for (int c = col; c < 4; ++c)
                A[r][c] -= f * A[col][c];
        }
    }
    return {A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
}

double slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t from, std::size_t to)
{
    double n = double(to - from), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = from; i < to; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

double minimize_over_r(const std::function<double(double)>& F, double lo, double hi, double* argmin)
{
    const int grid = 64;
    const double llo = std::log(lo), lhi = std::log(hi);
    std::vector<double> xs(grid), fs(grid);
    int best = 0;
    for (int k = 0; k < grid; ++k) {
        xs[k] = llo + (lhi - llo) * k / (grid - 1);
        fs[k] = safe_eval(F, std::exp(xs[k]));
        if (fs[k] < fs[best])
            best = k;
    }
    if (std::isinf(fs[best]))
        throw non_convergence("objective is infinite on the whole search interval");
    double a = xs[std::max(best - 1, 0)], b = xs[std::min(best + 1, grid - 1)];
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = safe_eval(F, std::exp(x1)), f2 = safe_eval(F, std::exp(x2));
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = safe_eval(F, std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = safe_eval(F, std::exp(x2));
        }
    }
    double xm = f1 <= f2 ? x1 : x2, fm = std::min(f1, f2);
    if (fs[best] < fm) {
        xm = xs[best];
        fm = fs[best];
    }
    if (argmin)
        *argmin = std::exp(xm);
    return fm;
}

double cprime_n(const LaurentSeries& f, double c, int n, double* argmin)
{
    double lo = std::isinf(f.R_f) ? 1e-4 : 1e-4 * f.R_f;
    double hi = std::isinf(f.R_f) ? 1e3 : f.R_f * (1 - 1e-9);
    auto F = [&](double r) { return std::pow(r, -n) * (c * std::pow(r, -f.n0) + kappa(f, r)); };
    return minimize_over_r(F, lo, hi, argmin);
}

BoundValue thm1_value(const LaurentSeries& f, const DecayHypotheses& h, int n, cplx w, cplx gamma)
{
    const double delta = h.delta();
    require_valid(h, delta);
    if (n < h.k0 - 1)
        throw DomainViolation("first-theorem bound needs n >= k0 - 1");
    const double g = std::abs(gamma), scale = h.cw(w) * h.ct(gamma);
    BoundValue v;
    if (n == h.k0 - 1) {
        v.constant = h.d * g * cprime_n(f, h.c, h.k0) / (h.b * h.c * delta);
        v.bound = v.constant * scale * std::pow(g, n);
        return v;
    }
    const int k = n - h.k0 + 1;
    v.constant = 2 * h.d * cprime_n(f, h.c, n) / (h.b * h.c * std::sqrt(pi * (1 + 2 * (n - h.k0))));
    v.bound = v.constant * scale * std::pow(g, n) * std::pow(delta, -k) * factorial(k);
    return v;
}

BoundValue thm15_value(const LaurentSeries& f, const DecayHypotheses& h, int n, double r, double rho, cplx w,
                       cplx gamma)
{
    const double delta = h.delta();
    require_valid(h, delta);
    if (n < -h.n0 || n >= h.k0 - 1)
        throw DomainViolation("inner-contour bound needs -n0 <= n < k0 - 1");
    if (!(rho > 0))
        throw DomainViolation("inner-contour bound needs rho > 0", "HypothesisViolation");
    const double g = std::abs(gamma);
    if (!(g < r))
        throw DomainViolation("inner-contour bound needs |gamma| < r");
    const double kap = kappa(f, r), rn0 = std::pow(r, -h.n0), rk = std::pow(rho, n - h.k0 + 1);
    const double cw = h.cw(w), ct = h.ct(gamma);
    BoundValue v;
    v.constant = (h.d * h.c * rn0 + h.d * std::max(rn0, rk) * kap) / (h.b * std::pow(r, n + 1));
    double stated = v.constant * cw * ct * std::pow(g, n + 1) / delta;
    double proof = h.d * cw * std::pow(g, n + 1) / (h.b * delta * std::pow(r, n + 1)) *
                   (ct * rn0 + std::pow(r, -h.k0) * kappa_range(f, -h.n0, n, r) + rk * kappa_tail(f, n, r));
    v.bound = std::max(stated, proof);
    v.alt_bound = std::min(stated, proof);
    return v;
}

BoundValue thm175_value(const LaurentSeries& f, const DecayHypotheses& h, int n, cplx w, cplx gamma)
{
    const double delta = h.delta();
    require_valid(h, delta);
    if (n < -h.n0)
        throw DomainViolation("order below -n0");
    const double g = std::abs(gamma), scale = h.cw(w) * h.ct(gamma);
    auto cbar = [&](double r, bool low) {
        double b = h.b_of_r ? h.b_of_r(r) : h.b;
        double L = h.L_of_r ? h.L_of_r(r) : 0.0;
        double kap = kappa(f, r), lead = h.d * h.c / b * std::pow(r, -h.n0);
        if (low)
            return std::pow(r, -n - 1) * (lead + std::max(1.0, L) * kap);
        return std::pow(r, -n) * (lead + std::max(2 * std::sqrt(2.0), L / r) * kap) / std::sqrt(pi * (n - h.k0 + 1));
    };
    auto constant = [&](bool low) {
        if (h.r_wg > 0)
            return cbar(h.r_wg, low);
        double lo = std::isinf(f.R_f) ? 1e-4 : 1e-4 * f.R_f;
        double hi = std::isinf(f.R_f) ? 1e3 : f.R_f * (1 - 1e-9);
        return minimize_over_r([&](double r) { return cbar(r, low); }, lo, hi);
    };
    BoundValue v;
    if (n < h.k0) {
        v.constant = constant(true);
        v.bound = v.constant * scale * std::pow(g, n + 1) / delta;
        return v;
    }
    const int k = n - h.k0 + 1;
    v.constant = constant(false);
    v.bound = v.constant * scale * std::pow(g, n) * std::pow(delta, -k) * factorial(k);
    v.alt_bound = v.constant * scale * std::pow(g, n) * std::pow(delta, k) * factorial(k);
    if (n == h.k0) {
        // seam between the two branches: report the larger
        double low = constant(true) * scale * std::pow(g, n + 1) / delta;
        v.bound = std::max(v.bound, low);
    }
    return v;
}

BoundValue thm77_value(const LaurentSeries& f, const DecayHypotheses& h, int n, cplx w, cplx gamma)
{
    if (!std::isinf(f.R_f))
        throw DomainViolation("single-pole bound needs R_f = infinity");
    if (!h.C77)
        throw ConfigError("single-pole bound needs the C^(n) envelope");
    const double delta = h.delta1 - h.delta_tilde;
    if (!(delta > 0))
        throw DomainViolation("single-pole bound needs delta1 > delta_tilde", "HypothesisViolation");
    if (n < h.k0 - 1)
        throw DomainViolation("single-pole bound needs n >= k0 - 1");
    const int k = n - h.k0 + 1;
    const double g = std::abs(gamma), C = h.C77(n, w), cw = h.cw(w), ct = h.ct(gamma);
    const double shape = std::pow(g, n + 1) * factorial(k);
    BoundValue v;
    v.constant = C * h.d / h.b;
    double stated = v.constant * cw * ct * shape * std::pow(delta, -(k + 1));
    double proof = v.constant * cw * shape * std::pow(delta, -(k + 1));
    v.bound = std::max(stated, proof);
    v.alt_bound = v.constant * cw * ct * shape * std::pow(delta, k + 1);
    return v;
}

Remainder measure_remainder(const TransformProblem& p, int n, cplx w, cplx gamma, double tol)
{
    auto g = evaluate_g_full(p, w, gamma, tol);
    CompensatedSum<cplx> s;
    double err = g.error;
    for (int m = -p.n0(); m <= n; ++m) {
        cplx a = p.function.laurent.a(m);
        if (a == 0.0)
            continue;
        auto e = moment_h_full(p, m, w, tol);
        cplx gm = std::pow(gamma, m);
        s.add(a * e.value * gm);
        err += std::abs(a) * e.error * std::abs(gm);
    }
    return {std::abs(g.value - s.value()), err};
}

double measurement_tol(double bound)
{
    double t = std::clamp(1e-4 * bound, 1e-13, 1e-9);
    return std::pow(10.0, std::floor(std::log10(t)));
}

double sampled_sup(const std::function<double(cplx)>& ratio, const Contour& c, double extent, int n)
{
    double sup = 0;
    for (cplx z : sample_points(c, n, extent)) {
        if (std::abs(z) < 1e-12)
            continue;
        double v = ratio(z);
        if (std::isfinite(v))
            sup = std::max(sup, v);
    }
    return 1.02 * sup;
}

bool hypotheses_hold(const TransformProblem& p, const DecayHypotheses& h, const Contour& c, cplx w, cplx gamma,
                     std::string* reason)
{
    auto fail = [&](const std::string& why) {
        if (reason)
            *reason = why;
        return false;
    };
    if (!(h.delta() > 0) && !h.C77)
        return fail("delta = delta1 - delta2 is not positive");
    if (!h.b_of_r) {
        double b = cos_theta_bound(c);
        if (b < h.b * (1 - 1e-9))
            return fail("angle bound b = " + std::to_string(h.b) + " exceeds the contour's " + std::to_string(b));
    }
    const double extent = 30.0 / std::max(h.delta1, 0.05);
    const double cw = h.cw(w), ct = h.ct(gamma), ag = std::abs(gamma);
    for (cplx z : sample_points(c, 64, extent)) {
        double az = std::abs(z);
        if (az < 1e-9)
            continue;
        double kenv = cw * std::exp(-h.delta1 * az) * std::pow(az, -h.k0);
        if (std::abs(p.kernel.K(w, z)) > kenv * (1 + 1e-6))
            return fail("kernel envelope violated at z = " + format_complex(z));
        if (h.C77 || ag * az < h.f_envelope_from)
            continue;
        double fenv = ct * std::exp(h.delta2 * az) * std::pow(ag * az, -h.n0);
        if (std::abs(p.function.f(gamma * z)) > fenv * (1 + 1e-6))
            return fail("function envelope violated at z = " + format_complex(z));
    }
    return true;
}

ErrorCertificate certify(const TransformProblem& p, const std::string& theorem, const BoundValue& v, int n, cplx w,
                         cplx gamma)
{
    ErrorCertificate c;
    c.theorem = theorem;
    c.n = n;
    c.w = w;
    c.gamma = gamma;
    c.constant = v.constant;
    c.bound = v.bound;
    c.alt_bound = v.alt_bound;
    auto r = measure_remainder(p, n, w, gamma, measurement_tol(v.bound));
    c.measured = r.value;
    c.quad_error = r.error;
    c.pass = c.measured <= c.bound * (1 + 1e-9) + r.error;
    if (!c.pass)
        c.reason = "measured remainder exceeds the bound";
    return c;
}

namespace {

ErrorCertificate checked(const TransformProblem& p, const DecayHypotheses& h, const Contour& c,
                         const std::string& theorem, const BoundValue& v, int n, cplx w, cplx gamma)
{
    std::string why;
    bool ok = hypotheses_hold(p, h, c, w, gamma, &why);
    ErrorCertificate cert = certify(p, theorem, v, n, w, gamma);
    if (!ok) {
        cert.pass = false;
        cert.reason = "hypothesis check failed: " + why;
    }
    return cert;
}

Contour deformed_of(const TransformProblem& p, cplx w, cplx gamma)
{
    return (p.contours.deformed ? p.contours.deformed : p.contours.original)(w, gamma);
}

} // namespace

ErrorCertificate thm1_bound(const TransformProblem& p, const DecayHypotheses& h, int n, cplx w, cplx gamma)
{
    auto v = thm1_value(p.function.laurent, h, n, w, gamma);
    return checked(p, h, deformed_of(p, w, gamma), "T1", v, n, w, gamma);
}

ErrorCertificate thm15_bound(const TransformProblem& p, const DecayHypotheses& h, int n, double r,
                             const Contour& bar, cplx w, cplx gamma)
{
    auto v = thm15_value(p.function.laurent, h, n, r, min_modulus(bar), w, gamma);
    return checked(p, h, bar, "T1_5", v, n, w, gamma);
}

ErrorCertificate thm175_bound(const TransformProblem& p, const DecayHypotheses& h, int n, cplx w, cplx gamma)
{
    auto v = thm175_value(p.function.laurent, h, n, w, gamma);
    const auto& cf = p.contours.borel ? p.contours.borel : p.contours.original;
    return checked(p, h, cf(w, gamma), "T1_75", v, n, w, gamma);
}

ErrorCertificate thm77_bound(const TransformProblem& p, const DecayHypotheses& h, int n, cplx w, cplx gamma)
{
    auto v = thm77_value(p.function.laurent, h, n, w, gamma);
    return checked(p, h, deformed_of(p, w, gamma), "T77", v, n, w, gamma);
}

double convergence_radius(const LaurentSeries& f, const DecayHypotheses& h)
{
    std::vector<double> xs, ys;
    int nonzero = 0;
    const int M = f.window;
    for (int m = std::max(h.k0, -f.n0); m <= M; ++m) {
        double a = std::abs(f.a(m));
        if (a == 0.0)
            continue;
        ++nonzero;
        if (m >= M / 2 && m >= 1) {
            xs.push_back(m);
            ys.push_back(std::log(a) + std::lgamma(m - h.k0 + 1.0));
        }
    }
    if (nonzero < 8 || xs.size() < 6)
        throw DomainViolation("coefficient window too short for a radius estimate");
    const std::size_t half = xs.size() / 2;
    double s1 = slope(xs, ys, 0, half), s2 = slope(xs, ys, half, xs.size());
    // accelerating growth: factorial type, the gamma-series diverges
    if (s2 - s1 > 0.25)
        return 0.0;
    auto c = fit3(xs, ys);
    return h.delta1 * std::exp(-c[1]);
}

} // namespace mero
