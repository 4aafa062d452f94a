#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mero/common.hpp"

namespace mero {

// Laurent data of f at 0: a_m for m >= -n0, radius R_f.
struct LaurentSeries {
    int n0 = 0;
    double R_f = inf;
    std::function<cplx(int)> coeff;
    // log |a_m|, for coefficients that under/overflow long before |a_m| r^m does
    std::function<double(int)> log_abs;
    // closed form of kappa(r) when known
    std::function<double(double)> kappa_closed;
    int window = 64;

    cplx a(int m) const { return m < -n0 ? cplx(0) : coeff(m); }
    double term(int m, double r) const;
};

struct FormalGammaSeries {
    int n0 = 0;
    int split = 0; // g^- holds m < split, g^+ holds m >= split
    std::vector<cplx> c; // c[m + n0] = a_m h_m(w)

    int M() const { return static_cast<int>(c.size()) - n0 - 1; }
    cplx coeff(int m) const;
    // sum_{m=-n0}^{n} c_m gamma^m
    cplx partial(cplx gamma, int n) const;
    cplx g_minus(cplx gamma) const { return partial(gamma, split - 1); }
};

struct BorelSeries {
    std::vector<cplx> b; // b_l, coefficient of xi^l
    std::vector<std::pair<int, cplx>> minus; // g^- terms (m, c_m), untouched
    double radius = inf;

    cplx eval(cplx xi) const;
};

struct GevreyReport {
    double A = 0;
    double sigma = 0;
    double residual = 0;
    double geometric_residual = 0;
    int terms = 0;
    bool convergent = false;
};

double kappa(const LaurentSeries& f, double r);
// sum over m >= n + 1
double kappa_tail(const LaurentSeries& f, int n, double r);
// sum over n <= m <= n2
double kappa_range(const LaurentSeries& f, int n, int n2, double r);

// zeta(k) for k >= 2
double zeta_even(int k);
double bernoulli(int k);
// B_k / k!, accurate for large k where B_k itself overflows
double bernoulli_over_factorial(int k);

BorelSeries borel_transform(const FormalGammaSeries& g);
GevreyReport gevrey1_diagnose(const FormalGammaSeries& g);

// Slope fit of log|b_l| against l over the upper half of the nonzero terms.
double borel_radius_estimate(const std::vector<cplx>& b);

} // namespace mero
