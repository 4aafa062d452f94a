#pragma once

#include <vector>

#include "mero/bounds.hpp"
#include "mero/borel.hpp"
#include "mero/transform.hpp"

// Faddeev's quantum dilogarithm as the transform of K(w, z) = e^{wz} / (sinh(pi z) z)
// against f = 1/sinh: g = 4 Log S_gamma(w).
namespace mero::faddeev {

inline const double cF = std::sqrt(2.0) / (std::sqrt(pi) * (1 - std::exp(-2.0)));

struct Domain {
    double theta_tilde = 0;
    double delta = 0; // strip margin, 0 < delta < pi cos theta~

    bool in_W(cplx w) const;
    bool in_U(cplx gamma) const;
};

// Largest admissible strip margin for w (scaled by 0.999).
double delta_for(cplx w, double theta_tilde);

// Offset of the base contour e^{i theta~}(R + i eps); gamma = 0 gives the moment contour.
double epsilon_for(double theta_tilde, cplx gamma);

cplx kernel(cplx w, cplx z);
cplx inv_sinh(cplx u);
// Laurent coefficient of 1/sinh: a_{2m-1} = 2 (1 - 2^{2m-1}) B_{2m} / (2m)!
cplx coeff(int k);
LaurentSeries laurent();

TransformProblem problem(double theta_tilde, Exec exec = Exec::parallel);

cplx eval_gF(cplx w, cplx gamma, double theta_tilde, double tol);
QuadratureResult eval_gF_full(cplx w, cplx gamma, double theta_tilde, double tol);
cplx eval_S(cplx w, cplx gamma, double theta_tilde = 0, double tol = 1e-10);

// h_1(w) = -2i / (1 + e^{-iw})
cplx h1_closed(cplx w);

// (1/4) sum_{m=0}^{n} a_{2m-1} gamma^{2m-1} h_{2m-1}(w), moments by quadrature
cplx P2n(cplx w, cplx gamma, int n, double theta_tilde = 0, double tol = 1e-12);

// Root in (pi/2, pi) of c^F (n+1) sin^2 r + n r sin r + r^2 cos r = 0; n is the series order.
double rn_root(int n);
// inf_r r^{-n} (c^F / r + 1 / sin r)
double cprime(int n);

struct Tiers {
    double exact = 0;
    double envelope = 0;
    double weakest = 0;
};

Tiers CtildeF(int n, double theta_tilde, double theta_gamma);

// One certificate per tier, in the order exact, envelope, weakest.
std::vector<ErrorCertificate> verify_FE(cplx w, cplx gamma, double theta_tilde, int n);

cplx BwF(cplx w, cplx xi, double tol = 1e-13);
std::vector<cplx> BwF_poles(cplx w, double max_modulus);
// Inverse Laplace transform of phi_z(gamma) = 1/sinh(gamma z) - 1/(gamma z) in gamma.
cplx inv_laplace_phi(cplx z, cplx xi);
KernelMoment kernel_moment(cplx w);
std::vector<PolePart> pole_shell(int n);
BorelFunction borel_function(cplx w);

// Decay data for the first theorem along the rotated line, with the optimal alpha.
DecayHypotheses hypotheses(cplx w, cplx gamma, double theta_tilde, int n);
// Same data with constants widened to cover an explicitly given contour.
DecayHypotheses hypotheses_on(const Contour& c, cplx w, cplx gamma, double theta_tilde, int n);

// V-shaped contour with apex i eps e^{i theta~} and arms tilted by beta.
Contour v_contour(double theta_tilde, double eps, double beta);

ErrorCertificate thm1(cplx w, cplx gamma, double theta_tilde, int n);
ErrorCertificate thm15(cplx w, cplx gamma, double theta_tilde, int n);
ErrorCertificate thm175(cplx w, cplx gamma, double theta_tilde, int n);

} // namespace mero::faddeev
