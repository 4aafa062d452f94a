#pragma once

#include <functional>

#include "mero/contour.hpp"

namespace mero {

struct QuadratureResult {
    cplx value{};
    double error = 0;
    long evaluations = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0;
    // decay rate assumed on rays when choosing the truncation point; 0 means 1
    double tail_delta = 0;
    // rays are never truncated below this parameter value
    double min_extent = 0;
    int max_panels = 1 << 15;
    Exec exec = Exec::parallel;
};

using Integrand = std::function<cplx(cplx)>;
using RealIntegrand = std::function<cplx(double)>;

// Adaptive Gauss-Kronrod (7/15) with breadth-first panel refinement. The serial and
// parallel paths evaluate identical panels and sum them in the same order.
QuadratureResult integrate_interval(const RealIntegrand& f, double a, double b, const QuadOptions& o);
QuadratureResult integrate_segment(const ArcSegment& s, const Integrand& f, const QuadOptions& o);
QuadratureResult integrate(const Contour& c, const Integrand& f, const QuadOptions& o);

} // namespace mero
