#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mero/quadrature.hpp"
#include "mero/series.hpp"
#include "mero/transform.hpp"

namespace mero {

// |psi(xi)| <= e^{alpha |xi|} sum_i C_i |xi|^{m_i}
struct GrowthBound {
    double alpha = 0;
    std::vector<std::pair<double, int>> terms;

    bool empty() const { return terms.empty(); }
    // bound on int_T^inf e^{-rate t} e^{alpha t} sum C_i t^{m_i} dt
    double tail(double T, double rate) const;
};

struct PolePart {
    cplx p;
    std::vector<cplx> b; // b[m - 1] = b_{p,m}
};

struct BorelFunction {
    std::function<cplx(cplx xi)> eval;
    std::function<std::vector<cplx>(double max_modulus)> poles;
    GrowthBound growth;
    std::optional<BorelSeries> taylor;
};

struct StokesData {
    double theta = 0;
    double eps = 0;
    std::vector<cplx> poles;
    std::vector<cplx> residues; // of e^{-xi/gamma} B(xi)
    cplx jump{};                // 2 pi i sum of residues
    cplx lateral{};             // L_{theta - eps}(B) - L_{theta + eps}(B)
    double lateral_error = 0;
};

struct SeriesSum {
    cplx value{};
    double error = 0;
    int terms = 0;
};

// sum_{n >= first} term(n) for series whose tail alternates smoothly; partial sums are
// accelerated by repeated averaging and confirmed by doubling the number of terms.
SeriesSum sum_alternating(const std::function<cplx(int)>& term, int first, double tol, int max_terms = 1 << 17);

bool admissible(double theta, cplx gamma, double alpha);

QuadratureResult laplace_along_ray_full(const std::function<cplx(cplx)>& psi, const GrowthBound& bound,
                                        double theta, cplx gamma, double tol, Exec exec = Exec::parallel);
cplx laplace_along_ray(const std::function<cplx(cplx)>& psi, const GrowthBound& bound, double theta, cplx gamma,
                       double tol);

// B_w(xi) = int K(w, z) L^{-1}(phi_z)(xi) dz over the Borel contour.
QuadratureResult borel_via_integral(const TransformProblem& p, cplx w, cplx xi,
                                    const std::function<cplx(cplx z, cplx xi)>& inv_laplace_phi, double tol);

// Kernel moment int K(w, z) e^{z xi / p} (z / p)^k dz.
using KernelMoment = std::function<cplx(cplx p, int k, cplx xi)>;

// Pole-sum representation. Poles come in shells (annuli of increasing radius); shells are
// summed until the accelerated sum settles.
SeriesSum borel_via_pole_sum(const std::function<std::vector<PolePart>(int shell)>& shells,
                             const KernelMoment& moment, const std::function<cplx(cplx)>& entire_part, cplx xi,
                             double tol);

// (1 / r_m) sup over the contour of |z| cos(theta + theta_z - theta_p), over pole-argument classes.
double alpha_theta(const std::vector<cplx>& poles, const Contour& c, double theta);

StokesData stokes_jump(const BorelFunction& B, double theta_j, cplx gamma, double eps, double tol);

cplx laplace_borel_reconstruct(const BorelFunction& B, cplx g_minus, double theta, cplx gamma, double tol);

} // namespace mero
