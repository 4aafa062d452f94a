#include "mero/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace mero {

double LaurentSeries::term(int m, double r) const
{
    if (m < -n0)
        return 0.0;
    if (log_abs) {
        double la = log_abs(m);
        return std::isinf(la) && la < 0 ? 0.0 : std::exp(la + m * std::log(r));
    }
    double a = std::abs(coeff(m));
    return a == 0.0 ? 0.0 : a * std::pow(r, m);
}

cplx FormalGammaSeries::coeff(int m) const
{
    if (m < -n0 || m > M())
        return 0.0;
    return c[m + n0];
}

cplx FormalGammaSeries::partial(cplx gamma, int n) const
{
    if (n > M())
        throw DomainViolation("truncation order beyond the coefficient window");
    CompensatedSum<cplx> s;
    for (int m = -n0; m <= n; ++m)
        s.add(c[m + n0] * std::pow(gamma, m));
    return s.value();
}

cplx BorelSeries::eval(cplx xi) const
{
    cplx s = 0;
    for (std::size_t l = b.size(); l-- > 0;)
        s = s * xi + b[l];
    return s;
}

namespace {

void check_radius(const LaurentSeries& f, double r)
{
    if (!(r > 0) || !(r < f.R_f))
        throw DomainViolation("kappa needs 0 < r < R_f");
}

// Sum of |a_m| r^m from m = from upward until a geometric tail bound closes.
double sum_to_infinity(const LaurentSeries& f, int from, double r)
{
    CompensatedSum<double> s;
    int prev_m = 0;
    double prev_t = 0, ratio = 1;
    int zeros = 0;
    const int max_terms = 400000;
    for (int m = from; m < from + max_terms; ++m) {
        double t = f.term(m, r);
        if (t == 0.0) {
            // identically zero tail
            if (prev_t > 0 && ++zeros > 256)
                return s.value();
            continue;
        }
        zeros = 0;
        s.add(t);
        if (!std::isfinite(s.value()))
            return inf;
        if (prev_t > 0)
            ratio = std::pow(t / prev_t, 1.0 / (m - prev_m));
        prev_t = t;
        prev_m = m;
        if (m - from >= 8 && ratio < 1) {
            double tail = t * ratio / (1 - ratio);
            if (tail <= 1e-16 * s.value())
                return s.value() + tail;
        }
    }
    throw non_convergence("kappa series does not close; r too close to R_f");
}

} // namespace

double zeta_even(int k)
{
    // direct terms below N, Euler-Maclaurin tail from N (error of order N^{-k-7})
    const int N = 64;
    CompensatedSum<double> s;
    for (int n = N - 1; n >= 1; --n)
        s.add(std::pow(double(n), -k));
    const double x = N;
    s.add(std::pow(x, 1 - k) / (k - 1));
    s.add(0.5 * std::pow(x, -k));
    s.add(k / 12.0 * std::pow(x, -k - 1));
    s.add(-k * (k + 1.0) * (k + 2.0) / 720.0 * std::pow(x, -k - 3));
    s.add(k * (k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0) / 30240.0 * std::pow(x, -k - 5));
    return s.value();
}

namespace {

constexpr int exact_limit = 20;
constexpr int bernoulli_max = 200;

using SmallTable = std::array<long double, exact_limit + 1>;

const SmallTable& small_bernoulli()
{
    static const SmallTable table = [] {
        SmallTable B{};
        B[0] = 1;
        for (int k = 1; k <= exact_limit; ++k) {
            long double s = 0, binom = 1; // C(k+1, j)
            for (int j = 0; j < k; ++j) {
                s += binom * B[j];
                binom = binom * (k + 1 - j) / (j + 1);
            }
            B[k] = (k > 1 && k % 2 == 1) ? 0 : -s / (k + 1);
        }
        return B;
    }();
    return table;
}

struct Fit {
    double intercept = 0, slope = 0, rms = 0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    Fit f;
    double den = n * sxx - sx * sx;
    f.slope = den == 0 ? 0 : (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double e = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - f.intercept - f.slope * x[i];
        e += r * r;
    }
    f.rms = std::sqrt(e / n);
    return f;
}

} // namespace

double kappa(const LaurentSeries& f, double r)
{
    check_radius(f, r);
    if (f.kappa_closed)
        return f.kappa_closed(r);
    return sum_to_infinity(f, -f.n0, r);
}

double kappa_tail(const LaurentSeries& f, int n, double r)
{
    check_radius(f, r);
    if (f.kappa_closed) {
        // subtract the head unless that cancels more than six digits
        double total = f.kappa_closed(r), diff = total - kappa_range(f, -f.n0, n, r);
        if (diff > 1e-6 * total)
            return diff;
    }
    return sum_to_infinity(f, std::max(n + 1, -f.n0), r);
}

double kappa_range(const LaurentSeries& f, int n, int n2, double r)
{
    check_radius(f, r);
    CompensatedSum<double> s;
    for (int m = std::max(n, -f.n0); m <= n2; ++m)
        s.add(f.term(m, r));
    return s.value();
}

double bernoulli(int k)
{
    if (k < 0 || k > bernoulli_max)
        throw DomainViolation("bernoulli index out of range");
    if (k <= exact_limit)
        return static_cast<double>(small_bernoulli()[k]);
    if (k % 2 == 1)
        return 0.0;
    double sign = (k / 2) % 2 == 1 ? 1.0 : -1.0;
    return sign * std::exp(std::lgamma(k + 1.0) + std::log(2 * zeta_even(k)) - k * std::log(2 * pi));
}

double bernoulli_over_factorial(int k)
{
    if (k < 0)
        throw DomainViolation("bernoulli index out of range");
    if (k <= exact_limit)
        return static_cast<double>(small_bernoulli()[k] / std::tgamma(static_cast<long double>(k + 1)));
    if (k % 2 == 1)
        return 0.0;
    double sign = (k / 2) % 2 == 1 ? 1.0 : -1.0;
    return sign * 2 * zeta_even(k) * std::exp(-k * std::log(2 * pi));
}

BorelSeries borel_transform(const FormalGammaSeries& g)
{
    BorelSeries out;
    const int M = g.M();
    for (int m = -g.n0; m <= M; ++m) {
        cplx cm = g.coeff(m);
        if (m < g.split) {
            out.minus.emplace_back(m, cm);
            continue;
        }
        if (m <= 0) {
            if (cm != 0.0)
                throw DomainViolation("g+ contains a term with m <= 0");
            continue;
        }
        if (static_cast<int>(out.b.size()) < m)
            out.b.resize(m, 0.0);
        out.b[m - 1] = cm * std::exp(-std::lgamma(double(m)));
    }
    out.radius = borel_radius_estimate(out.b);
    return out;
}

double borel_radius_estimate(const std::vector<cplx>& b)
{
    std::vector<double> x, y;
    for (std::size_t l = 0; l < b.size(); ++l) {
        if (std::abs(b[l]) > 0) {
            x.push_back(double(l));
            y.push_back(std::log(std::abs(b[l])));
        }
    }
    if (x.size() < 4)
        return inf;
    std::size_t h = x.size() / 2;
    Fit f = least_squares({x.begin() + h, x.end()}, {y.begin() + h, y.end()});
    return std::exp(-f.slope);
}

GevreyReport gevrey1_diagnose(const FormalGammaSeries& g)
{
    std::vector<double> m_vals, y_fact, y_geo;
    const int s = g.split;
    for (int m = std::max(s, -g.n0); m <= g.M(); ++m) {
        double a = std::abs(g.coeff(m));
        if (a == 0.0)
            continue;
        m_vals.push_back(m);
        y_geo.push_back(std::log(a));
        y_fact.push_back(std::log(a) - std::lgamma(m - s + 1.0));
    }
    GevreyReport rep;
    rep.terms = static_cast<int>(m_vals.size());
    if (m_vals.empty()) {
        rep.convergent = true;
        return rep;
    }
    if (m_vals.size() < 8)
        throw DomainViolation("Gevrey diagnosis needs at least 8 nonzero g+ terms");
    std::size_t h = m_vals.size() / 2;
    std::vector<double> xs(m_vals.begin() + h, m_vals.end());
    Fit ff = least_squares(xs, {y_fact.begin() + h, y_fact.end()});
    Fit fg = least_squares(xs, {y_geo.begin() + h, y_geo.end()});
    rep.A = std::exp(ff.intercept);
    rep.sigma = std::exp(ff.slope);
    rep.residual = ff.rms;
    rep.geometric_residual = fg.rms;
    rep.convergent = fg.rms < ff.rms;
    return rep;
}

} // namespace mero
