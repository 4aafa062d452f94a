#pragma once

// Reference values built from primary definitions (sums, series, recurrences), independent of
// the library's contour machinery.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// Bernoulli numbers from sum_{j=0}^{k} C(k+1, j) B_j = 0.
inline std::vector<long double> bernoulli_table(int kmax)
{
    std::vector<long double> B(kmax + 1, 0.0L);
    B[0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        long double s = 0, binom = 1; // C(k+1, j)
        for (int j = 0; j < k; ++j) {
            s += binom * B[j];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        B[k] = -s / (k + 1);
    }
    return B;
}

// Composite Simpson on [a, b] with n (even) panels.
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int n)
{
    const double h = (b - a) / n;
    cplx s = f(a) + f(b);
    for (int k = 1; k < n; ++k)
        s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

// Li_2(z) = -int_0^1 log(1 - z t) / t dt, valid off the cut [1, inf).
inline cplx li2(cplx z)
{
    auto f = [z](double t) -> cplx {
        if (t == 0)
            return -z;
        return std::log(1.0 - z * t) / t;
    };
    return -simpson(f, 0, 1, 40000);
}

// sum_{n >= 0} (n + q)^{-s} by Euler-Maclaurin after N direct terms.
inline cplx hurwitz(cplx s, double q, int N = 30)
{
    cplx sum = 0;
    for (int n = 0; n < N; ++n)
        sum += std::pow(cplx(n + q), -s);
    const double x = N + q;
    sum += std::pow(cplx(x), 1.0 - s) / (s - 1.0) + 0.5 * std::pow(cplx(x), -s);
    auto B = bernoulli_table(16);
    cplx rising = s; // s (s+1) ... (s + 2k - 2)
    long double fact = 2;
    for (int k = 1; k <= 8; ++k) {
        sum += double(B[2 * k] / fact) * rising * std::pow(cplx(x), -s - double(2 * k - 1));
        rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
        fact *= (2 * k + 1) * (2 * k + 2);
    }
    return sum;
}

inline cplx zeta(cplx s) { return hurwitz(s, 1.0); }

// Gauss series for |w| < 1.
inline cplx hyp2f1(double a, double b, double c, cplx w)
{
    cplx term = 1, sum = 1;
    for (int n = 0; n < 2000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

// Ai(x) = c1 f(x) - c2 g(x) from the Maclaurin series of the two Airy solutions.
inline double airy_ai(double x)
{
    const double c1 = 1 / (std::pow(3.0, 2.0 / 3) * std::tgamma(2.0 / 3));
    const double c2 = 1 / (std::pow(3.0, 1.0 / 3) * std::tgamma(1.0 / 3));
    double f = 0, g = 0, tf = 1, tg = x;
    for (int k = 0; k < 60; ++k) {
        f += tf;
        g += tg;
        tf *= x * x * x / ((3 * k + 2.0) * (3 * k + 3.0));
        tg *= x * x * x / ((3 * k + 3.0) * (3 * k + 4.0));
    }
    return c1 * f - c2 * g;
}

// The derivatives of sigma(w) = 1 / (1 + e^{-iw}) are polynomials in sigma:
// d/dw P(sigma) = P'(sigma) i sigma (1 - sigma). Returns d^k sigma / dw^k.
inline cplx sigma_derivative(int k, cplx w)
{
    std::vector<cplx> P{0.0, 1.0}; // P(s) = s
    for (int j = 0; j < k; ++j) {
        std::vector<cplx> Q(P.size() + 1, 0.0);
        for (std::size_t d = 1; d < P.size(); ++d) {
            cplx c = P[d] * double(d) * cplx(0, 1);
            Q[d] += c;     // * s
            Q[d + 1] -= c; // * (-s^2)
        }
        P = Q;
    }
    const cplx s = 1.0 / (1.0 + std::exp(-cplx(0, 1) * w));
    cplx v = 0, pw = 1;
    for (cplx c : P) {
        v += c * pw;
        pw *= s;
    }
    return v;
}

// h_{2m-1}(w) = (2/i) d^{2m} Li_2(-e^{iw}) / dw^{2m}; for m >= 1 that is (2/i) sigma^{(2m-2)}.
inline cplx faddeev_moment(int m, cplx w)
{
    if (m == 0)
        return 2.0 / cplx(0, 1) * li2(-std::exp(cplx(0, 1) * w));
    return 2.0 / cplx(0, 1) * sigma_derivative(2 * m - 2, w);
}

// Root of r e^r = 1 + e^r, minimiser of (1 + e^r) / r.
inline double exp_root()
{
    double lo = 1, hi = 2;
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        ((mid - 1) * std::exp(mid) - 1 > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Root in (pi/2, pi) of cF (n+1) sin^2 r + n r sin r + r^2 cos r by plain bisection.
inline double rn_root(int n)
{
    const double cF = std::sqrt(2.0) / (std::sqrt(pi) * (1 - std::exp(-2.0)));
    auto F = [&](double r) {
        double s = std::sin(r);
        return cF * (n + 1) * s * s + n * r * s + r * r * std::cos(r);
    };
    double lo = pi / 2, hi = pi - 1e-12;
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        ((F(mid) > 0) == (F(lo) > 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace oracle
