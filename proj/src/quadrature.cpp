#include "mero/quadrature.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <vector>

namespace mero {

namespace {

constexpr std::array<double, 8> xgk = {
    0.991455371120812639, 0.949107912342758525, 0.864864423359769073, 0.741531185599394440,
    0.586087235467691130, 0.405845151377397167, 0.207784955007898468, 0.0};
constexpr std::array<double, 8> wgk = {
    0.022935322010529225, 0.063092092629978553, 0.104790010322250184, 0.140653259715525919,
    0.169004726639267903, 0.190350578064785410, 0.204432940075298892, 0.209482141084727828};
// Gauss weights at xgk[1], xgk[3], xgk[5], xgk[7]
constexpr std::array<double, 4> wg = {
    0.129484966168869693, 0.279705391489276668, 0.381830050505118945, 0.417959183673469388};

struct Panel {
    double a, b;
    cplx value;
    double error;
};

cplx guarded(const RealIntegrand& f, double t)
{
    cplx v = f(t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > overflow_guard)
        throw pole_too_close("integrand overflow at parameter " + std::to_string(t));
    return v;
}

void gk15(const RealIntegrand& f, Panel& p)
{
    double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
    cplx fc = guarded(f, c);
    cplx k = wgk[7] * fc, g = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        cplx s = guarded(f, c - h * xgk[j]) + guarded(f, c + h * xgk[j]);
        k += wgk[j] * s;
        if (j % 2 == 1)
            g += wg[j / 2] * s;
    }
    p.value = h * k;
    p.error = std::abs(h * (k - g));
}

void evaluate(const RealIntegrand& f, std::vector<Panel>& ps, Exec exec)
{
    const long n = static_cast<long>(ps.size());
    if (exec == Exec::serial || n < 2) {
        for (auto& p : ps)
            gk15(f, p);
        return;
    }
    std::vector<std::exception_ptr> errs(ps.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            gk15(f, ps[i]);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

QuadratureResult integrate_interval(const RealIntegrand& f, double a, double b, const QuadOptions& o)
{
    QuadratureResult r;
    if (a == b)
        return r;
    const int initial = 8;
    std::vector<Panel> fresh;
    for (int k = 0; k < initial; ++k)
        fresh.push_back({a + (b - a) * k / initial, a + (b - a) * (k + 1) / initial, {}, 0});
    std::vector<Panel> done;
    int panels = initial;
    const double width = std::abs(b - a);
    for (;;) {
        evaluate(f, fresh, o.exec);
        r.evaluations += 15 * static_cast<long>(fresh.size());
        for (auto& p : fresh)
            done.push_back(p);
        fresh.clear();
        // keep panels sorted by left end so the summation order is fixed
        std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
        CompensatedSum<cplx> sum;
        CompensatedSum<double> err;
        for (const auto& p : done) {
            sum.add(p.value);
            err.add(p.error);
        }
        r.value = sum.value();
        r.error = err.value();
        double tol = std::max(o.abs_tol, o.rel_tol * std::abs(r.value));
        if (r.error <= tol)
            return r;
        std::vector<Panel> keep;
        for (const auto& p : done) {
            double share = 0.5 * tol * std::abs(p.b - p.a) / width;
            if (p.error > share && panels < o.max_panels) {
                double m = 0.5 * (p.a + p.b);
                if (m == p.a || m == p.b) {
                    keep.push_back(p);
                    continue;
                }
                fresh.push_back({p.a, m, {}, 0});
                fresh.push_back({m, p.b, {}, 0});
                ++panels;
            } else {
                keep.push_back(p);
            }
        }
        done.swap(keep);
        if (fresh.empty())
            throw non_convergence("quadrature did not reach tolerance: error " + std::to_string(r.error) +
                                  " > " + std::to_string(tol));
    }
}

QuadratureResult integrate_segment(const ArcSegment& s, const Integrand& f, const QuadOptions& o)
{
    RealIntegrand F = [&](double t) { return f(s.point(t)) * s.derivative(t); };
    QuadratureResult r;
    if (!s.infinite()) {
        r = integrate_interval(F, s.t0, s.t1, o);
    } else {
        const double delta = o.tail_delta > 0 ? o.tail_delta : 1.0;
        double T = std::max(s.t0 + 4.0 / delta, o.min_extent);
        r = integrate_interval(F, s.t0, T, o);
        double tail = inf;
        for (int iter = 0;; ++iter) {
            double m0 = std::abs(guarded(F, T)), m1 = std::abs(guarded(F, T + 1.0 / delta)),
                   m2 = std::abs(guarded(F, T + 2.0 / delta));
            r.evaluations += 3;
            double m = std::max({m0, m1, m2});
            // decay rate of at least delta/2 over the probe window
            bool decaying = m == 0.0 || (m2 <= m0 * std::exp(-1.0) && m1 <= m0);
            tail = 2.0 * m / delta * std::exp(1.0);
            double target = 0.1 * std::max(o.abs_tol, o.rel_tol * std::abs(r.value));
            if (decaying && tail <= target)
                break;
            if (T > 1e7 || iter > 200)
                throw non_convergence("ray integrand does not decay fast enough for truncation");
            double Tn = T + std::max(2.0 / delta, 0.5 * (T - s.t0));
            auto ext = integrate_interval(F, T, Tn, o);
            r.value += ext.value;
            r.error += ext.error;
            r.evaluations += ext.evaluations;
            T = Tn;
        }
        r.error += tail;
    }
    if (s.reversed)
        r.value = -r.value;
    return r;
}

QuadratureResult integrate(const Contour& c, const Integrand& f, const QuadOptions& o)
{
    if (c.segments.empty())
        return {};
    QuadOptions so = o;
    so.abs_tol = o.abs_tol / c.d();
    for (int pass = 0; pass < 2; ++pass) {
        QuadratureResult r;
        CompensatedSum<cplx> sum;
        for (const auto& s : c.segments) {
            auto part = integrate_segment(s, f, so);
            sum.add(part.value);
            r.error += part.error;
            r.evaluations += part.evaluations;
        }
        r.value = sum.value();
        double tol = std::max(o.abs_tol, o.rel_tol * std::abs(r.value));
        if (r.error <= tol || pass == 1) {
            if (r.error > tol)
                throw non_convergence("contour quadrature error " + std::to_string(r.error) +
                                      " exceeds tolerance " + std::to_string(tol));
            return r;
        }
        // cancellation between segments: tighten to an absolute target and redo
        so.abs_tol = 0.5 * tol / c.d();
        so.rel_tol = 0;
    }
    return {};
}

} // namespace mero
