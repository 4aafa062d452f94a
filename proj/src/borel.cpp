#include "mero/borel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mero {

double GrowthBound::tail(double T, double rate) const
{
    const double net = rate - alpha;
    if (!(net > 0))
        return inf;
    const double x = net * T;
    double total = 0;
    for (auto [C, m] : terms) {
        // int_T^inf t^m e^{-net t} dt = m! e^{-x} sum_{j<=m} x^j / j! / net^{m+1}
        double s = 0, term = 1;
        for (int j = 0; j <= m; ++j) {
            s += term;
            term *= x / (j + 1);
        }
        total += C * std::exp(std::lgamma(m + 1.0) - x - (m + 1) * std::log(net)) * s;
    }
    return total;
}

SeriesSum sum_alternating(const std::function<cplx(int)>& term, int first, double tol, int max_terms)
{
    std::vector<cplx> S;
    CompensatedSum<cplx> run;
    auto extend = [&](int N) {
        while (static_cast<int>(S.size()) < N) {
            run.add(term(first + static_cast<int>(S.size())));
            S.push_back(run.value());
        }
    };
    auto estimate = [&](int N) {
        const int K = std::min(24, N / 2);
        std::vector<cplx> v(S.begin() + (N - K - 1), S.begin() + N);
        for (int level = 0; level < K; ++level)
            for (int i = 0; i + 1 < static_cast<int>(v.size()) - level; ++i)
                v[i] = 0.5 * (v[i] + v[i + 1]);
        return v[0];
    };
    for (int N = 64; N <= max_terms; N *= 2) {
        extend(N);
        cplx e1 = estimate(N / 2), e2 = estimate(N);
        double err = std::abs(e2 - e1);
        if (err <= tol)
            return {e2, err, N};
    }
    throw non_convergence("series acceleration did not settle within " + std::to_string(max_terms) + " terms");
}

bool admissible(double theta, cplx gamma, double alpha)
{
    if (gamma == 0.0)
        return false;
    return std::cos(theta - std::arg(gamma)) > std::abs(gamma) * alpha + 1e-12;
}

QuadratureResult laplace_along_ray_full(const std::function<cplx(cplx)>& psi, const GrowthBound& bound,
                                        double theta, cplx gamma, double tol, Exec exec)
{
    if (!admissible(theta, gamma, bound.alpha))
        throw inadmissible("gamma = " + format_complex(gamma) + " is not admissible for theta = " +
                           std::to_string(theta));
    const double rate = std::cos(theta - std::arg(gamma)) / std::abs(gamma);
    const double net = rate - bound.alpha;
    const cplx dir = std::polar(1.0, theta), ig = 1.0 / gamma;
    QuadOptions o;
    o.abs_tol = tol;
    o.exec = exec;
    o.tail_delta = net;
    if (bound.empty()) {
        Contour c;
        c.segments.push_back(ray(0.0, theta, false));
        return integrate(c, [&](cplx xi) { return std::exp(-xi * ig) * psi(xi); }, o);
    }
    double T = 1.0 / net;
    while (bound.tail(T, rate) > 0.1 * tol) {
        T *= 1.5;
        if (T > 1e8)
            throw non_convergence("Laplace tail bound does not close");
    }
    auto F = [&](double t) {
        cplx xi = t * dir;
        return std::exp(-xi * ig) * psi(xi) * dir;
    };
    o.abs_tol = 0.9 * tol;
    auto r = integrate_interval(F, 0.0, T, o);
    r.error += bound.tail(T, rate);
    return r;
}

cplx laplace_along_ray(const std::function<cplx(cplx)>& psi, const GrowthBound& bound, double theta, cplx gamma,
                       double tol)
{
    return laplace_along_ray_full(psi, bound, theta, gamma, tol).value;
}

QuadratureResult borel_via_integral(const TransformProblem& p, cplx w, cplx xi,
                                    const std::function<cplx(cplx z, cplx xi)>& inv_laplace_phi, double tol)
{
    if (!inv_laplace_phi)
        throw ConfigError("no inverse Laplace transform of phi_z supplied for " + p.id);
    const auto& cf = p.contours.borel ? p.contours.borel : p.contours.original;
    QuadOptions o;
    o.abs_tol = tol;
    o.rel_tol = tol;
    o.tail_delta = p.delta() > 0 ? p.delta() : 1.0;
    o.exec = p.exec;
    const auto& K = p.kernel.K;
    return integrate(cf(w, 0.0), [&](cplx z) { return K(w, z) * inv_laplace_phi(z, xi); }, o);
}

SeriesSum borel_via_pole_sum(const std::function<std::vector<PolePart>(int shell)>& shells,
                             const KernelMoment& moment, const std::function<cplx(cplx)>& entire_part, cplx xi,
                             double tol)
{
    auto binom = [](int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); };
    auto shell_term = [&](int n) {
        CompensatedSum<cplx> s;
        for (const auto& pp : shells(n)) {
            if (pp.p == 0.0)
                throw DomainViolation("pole at 0 in the pole-sum representation");
            for (int m = 1; m <= static_cast<int>(pp.b.size()); ++m) {
                if (pp.b[m - 1] == 0.0)
                    continue;
                cplx pref = pp.b[m - 1] / std::pow(pp.p, m);
                for (int l = 0; l <= m - 1; ++l) {
                    for (int lp = 0; lp <= l; ++lp) {
                        int k = m - l + lp;
                        double sign = l % 2 == 0 ? 1.0 : -1.0;
                        cplx xi_pow = std::pow(xi, k - 1) / std::tgamma(double(k));
                        s.add(-pref * binom(m, l) * sign * binom(l, lp) * moment(pp.p, k, xi) * xi_pow);
                    }
                }
            }
        }
        return s.value();
    };
    SeriesSum out = sum_alternating(shell_term, 1, tol);
    if (entire_part)
        out.value += entire_part(xi);
    return out;
}

double alpha_theta(const std::vector<cplx>& poles, const Contour& c, double theta)
{
    if (poles.empty() || c.segments.empty())
        return 0.0;
    double rm = inf;
    std::map<long long, double> classes;
    for (cplx p : poles) {
        rm = std::min(rm, std::abs(p));
        classes[std::llround(std::arg(p) * 1e9)] = std::arg(p);
    }
    if (!(rm > 0))
        throw DomainViolation("pole at 0: r_m must be positive");
    double sup = -inf;
    for (auto [key, thp] : classes) {
        const cplx rot = std::polar(1.0, theta - thp);
        for (const auto& s : c.segments) {
            if (s.kind == SegmentKind::arc) {
                for (int k = 0; k <= 512; ++k)
                    sup = std::max(sup, (s.point(s.t0 + (s.t1 - s.t0) * k / 512) * rot).real());
                continue;
            }
            double slope = (std::polar(1.0, s.angle) * rot).real();
            if (s.infinite() && slope > 1e-12)
                throw DomainViolation("alpha_theta is unbounded along an infinite ray", "HypothesisViolation");
            sup = std::max(sup, (s.point(s.t0) * rot).real());
            if (!s.infinite())
                sup = std::max(sup, (s.point(s.t1) * rot).real());
        }
    }
    return sup / rm;
}

StokesData stokes_jump(const BorelFunction& B, double theta_j, cplx gamma, double eps, double tol)
{
    const double cj = std::cos(theta_j - std::arg(gamma));
    if (!(cj > 1e-12))
        throw inadmissible("the Stokes direction is not admissible for this gamma");
    StokesData out;
    out.theta = theta_j;
    out.eps = eps;
    const double maxmod = std::abs(gamma) * (std::log(1.0 / tol) + 10) / cj;
    std::vector<cplx> all = B.poles ? B.poles(2 * maxmod) : std::vector<cplx>{};
    auto angle_gap = [&](cplx p) { return std::abs(std::remainder(std::arg(p) - theta_j, 2 * pi)); };
    for (cplx p : all) {
        double ag = angle_gap(p);
        if (ag < 1e-9) {
            if (std::abs(p) <= maxmod)
                out.poles.push_back(p);
        } else if (ag <= eps && std::abs(p) <= maxmod) {
            throw DomainViolation("pole " + format_complex(p) + " off the Stokes ray inside the sector",
                                  "SectorPurity");
        }
    }
    std::sort(out.poles.begin(), out.poles.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    auto F = [&](cplx xi) { return std::exp(-xi / gamma) * B.eval(xi); };
    CompensatedSum<cplx> jump;
    const int nodes = 64;
    for (cplx p : out.poles) {
        double gap = std::abs(p);
        for (cplx q : all)
            if (q != p)
                gap = std::min(gap, std::abs(q - p));
        const double rad = std::min(0.1 * gap, 0.1 * std::abs(p));
        CompensatedSum<cplx> s;
        for (int k = 0; k < nodes; ++k) {
            cplx u = std::polar(1.0, 2 * pi * (k + 0.5) / nodes);
            s.add(rad * u * F(p + rad * u));
        }
        cplx res = s.value() / double(nodes);
        out.residues.push_back(res);
        jump.add(2.0 * pi * I * res);
    }
    out.jump = jump.value();
    auto lo = laplace_along_ray_full(B.eval, B.growth, theta_j - eps, gamma, 0.5 * tol);
    auto hi = laplace_along_ray_full(B.eval, B.growth, theta_j + eps, gamma, 0.5 * tol);
    out.lateral = lo.value - hi.value;
    out.lateral_error = lo.error + hi.error;
    return out;
}

cplx laplace_borel_reconstruct(const BorelFunction& B, cplx g_minus, double theta, cplx gamma, double tol)
{
    if (!admissible(theta, gamma, B.growth.alpha))
        throw inadmissible("gamma outside U_{theta, alpha}");
    return g_minus + laplace_along_ray(B.eval, B.growth, theta, gamma, tol);
}

} // namespace mero
