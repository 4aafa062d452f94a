#pragma once

#include <functional>
#include <limits>
#include <string>

#include "mero/transform.hpp"

namespace mero {

struct DecayHypotheses {
    double delta1 = 0;
    double delta2 = 0;
    double c = 1; // floor of c_tilde
    double b = 1;
    int d = 1;
    int k0 = 0;
    int n0 = 0;
    std::function<double(cplx w)> c_w;
    std::function<double(cplx gamma)> c_tilde;

    // single pole regime: |phi_n(gamma z) / (gamma z)^{n+1}| <= C77(n, w) e^{delta_tilde |z|}
    double delta_tilde = 0;

    // the function envelope is only used on |gamma z| >= this radius
    double f_envelope_from = 0;
    std::function<double(int n, cplx w)> C77;

    // gamma-dependent contour regime. r_wg <= 0 asks for the infimum over r.
    double r_wg = 0;
    std::function<double(double r)> L_of_r;
    std::function<double(double r)> b_of_r;

    double delta() const { return delta1 - delta2; }
    double cw(cplx w) const { return c_w ? c_w(w) : 1.0; }
    double ct(cplx gamma) const { return c_tilde ? c_tilde(gamma) : c; }
};

struct BoundValue {
    double constant = 0;
    double bound = 0;
    // the variant with the exponent of delta as displayed (positive), or the competing constant
    double alt_bound = std::numeric_limits<double>::quiet_NaN();
};

struct ErrorCertificate {
    std::string theorem;
    int n = 0;
    cplx w{}, gamma{};
    double constant = 0;
    double bound = 0;
    double alt_bound = std::numeric_limits<double>::quiet_NaN();
    double measured = 0;
    double quad_error = 0;
    bool pass = false;
    std::string reason;
};

// inf over r in (lo, hi) of F: log-spaced grid seeded golden-section search.
double minimize_over_r(const std::function<double(double)>& F, double lo, double hi, double* argmin = nullptr);

// inf_{0 < r < R_f} r^{-n} (c r^{-n0} + kappa(r))
double cprime_n(const LaurentSeries& f, double c, int n, double* argmin = nullptr);

BoundValue thm1_value(const LaurentSeries& f, const DecayHypotheses& h, int n, cplx w, cplx gamma);
BoundValue thm15_value(const LaurentSeries& f, const DecayHypotheses& h, int n, double r, double rho, cplx w,
                       cplx gamma);
BoundValue thm175_value(const LaurentSeries& f, const DecayHypotheses& h, int n, cplx w, cplx gamma);
BoundValue thm77_value(const LaurentSeries& f, const DecayHypotheses& h, int n, cplx w, cplx gamma);

struct Remainder {
    double value = 0;
    double error = 0;
};

// |g - A^{gamma,n}| with the quadrature error of both pieces
Remainder measure_remainder(const TransformProblem& p, int n, cplx w, cplx gamma, double tol);

// Tolerance used to measure a remainder against a bound of the given size.
double measurement_tol(double bound);

// sup over contour samples of ratio(z), times the 1.02 safety factor; rays out to |z| ~ extent
double sampled_sup(const std::function<double(cplx)>& ratio, const Contour& c, double extent, int n = 400);

// Envelope spot-check of the declared hypotheses on a contour.
bool hypotheses_hold(const TransformProblem& p, const DecayHypotheses& h, const Contour& c, cplx w, cplx gamma,
                     std::string* reason = nullptr);

ErrorCertificate certify(const TransformProblem& p, const std::string& theorem, const BoundValue& v, int n, cplx w,
                         cplx gamma);

ErrorCertificate thm1_bound(const TransformProblem& p, const DecayHypotheses& h, int n, cplx w, cplx gamma);
ErrorCertificate thm15_bound(const TransformProblem& p, const DecayHypotheses& h, int n, double r,
                             const Contour& bar, cplx w, cplx gamma);
ErrorCertificate thm175_bound(const TransformProblem& p, const DecayHypotheses& h, int n, cplx w, cplx gamma);
ErrorCertificate thm77_bound(const TransformProblem& p, const DecayHypotheses& h, int n, cplx w, cplx gamma);

// delta1 R with R^{-1} = limsup (|a_m| (m - k0)!)^{1/m} over the window; 0 for factorial growth.
double convergence_radius(const LaurentSeries& f, const DecayHypotheses& h);

} // namespace mero
