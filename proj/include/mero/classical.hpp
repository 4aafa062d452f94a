#pragma once

#include <string>

#include "mero/bounds.hpp"
#include "mero/transform.hpp"

// Classical special functions as Mellin-type transforms over Hankel and wedge contours.
namespace mero::classical {

enum class Example { gamma, recip_gamma, riemann_zeta, hurwitz_zeta, gauss_2f1, airy };

std::string to_string(Example e);
Example parse_example(const std::string& s);

struct ExampleSpec {
    Example id = Example::gamma;
    double alpha = 0.75;
    double theta_tilde = pi / 3; // Airy only
    double a = 1, b = 1, c = 2;  // 2F1 only
    double epsilon = 0.5;        // Hankel offset / 2F1 arc radius
};

TransformProblem make_problem(const ExampleSpec& s, Exec exec = Exec::parallel);

cplx gamma_eval(cplx w, cplx gamma, double alpha, double tol);
cplx recip_gamma_eval(cplx w, cplx gamma, double alpha, double tol);

cplx zeta_eval(cplx w, cplx gamma, double alpha, double tol);
// Laurent coefficient of e^{(1-alpha) z} / (1 - e^z), m >= -1
double zeta_coeff(int m, double alpha);

cplx hurwitz_eval(cplx w, double q, double tol);
// int K_H(w, z) z^m dz; zeta_0 = zeta(w)
cplx hurwitz_moment(int m, cplx w, double tol);

// The raw transform g; at gamma = 1 it equals pi i (Gamma(a)Gamma(b)/Gamma(c)) (2F1 - 1).
cplx gauss2f1_eval(cplx w, cplx gamma, double alpha, double a, double b, double c, double tol);
// 2F1(a, b; c; w) recovered from g at gamma = 1
cplx gauss2f1_value(cplx w, double a, double b, double c, double alpha, double tol);

// g over the wedge; at gamma = 1, g / (2 pi i) = Ai(w)
cplx airy_eval(cplx w, cplx gamma, double alpha, double theta_tilde, double tol);
double airy_coeff(int m, double alpha);

// First-theorem data for gamma, recip_gamma, riemann_zeta and airy.
DecayHypotheses thm1_hypotheses(const ExampleSpec& s, cplx w, cplx gamma);
// Single-pole data for hurwitz_zeta and airy.
DecayHypotheses thm77_hypotheses(const ExampleSpec& s, cplx w, cplx gamma);

// Radius predicted for the convergent gamma-series: alpha R (gamma, recip_gamma), delta1 R (airy, hurwitz).
double predicted_radius(const ExampleSpec& s, cplx w);

} // namespace mero::classical
