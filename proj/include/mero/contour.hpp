#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mero/common.hpp"

namespace mero {

enum class SegmentKind { line, ray, arc };

// z(t) = anchor + t e^{i angle} for lines and rays, anchor + radius e^{i(angle + t)} for arcs.
// Every kind has constant speed. A reversed segment is traversed from t1 down to t0.
struct ArcSegment {
    SegmentKind kind = SegmentKind::line;
    cplx anchor{};
    double angle = 0;
    double radius = 0;
    double t0 = 0;
    double t1 = 0;
    bool reversed = false;

    cplx point(double t) const;
    cplx derivative(double t) const;
    double speed() const { return kind == SegmentKind::arc ? radius : 1.0; }
    bool infinite() const { return std::isinf(t1); }
    double length() const { return speed() * (t1 - t0); }
    ArcSegment restricted(double a, double b) const;
};

struct Contour {
    std::vector<ArcSegment> segments;
    double clearance = 0;

    int d() const { return static_cast<int>(segments.size()); }
};

ArcSegment line_segment(cplx a, cplx b);
ArcSegment ray(cplx anchor, double angle, bool inward);
// Counter-clockwise when to > from.
ArcSegment arc(cplx centre, double radius, double from, double to);

// e^{i theta}(R + i offset), split at its closest point to 0, left to right.
Contour make_rotated_line(double theta_tilde, double offset);
// Around R_- from -inf - i eps to -inf + i eps. The deformed variant is two rays
// through 0 at angles -(pi - phi) and pi - phi, phi = pi/12.
Contour make_hankel(double epsilon, bool deformed);
Contour make_circle(cplx centre, double radius);
// Incoming ray at angle -a, outgoing at angle b, joined at 0 (or by an arc of radius eps > 0).
Contour make_wedge(double in_angle, double out_angle, double eps = 0);
// Two rays leaving the apex at angles pi - beta (incoming) and beta (outgoing).
Contour make_v_contour(cplx apex, double beta);

Contour reversed(const Contour& c);

double cos_theta_bound(const Contour& c, std::optional<double> outside_radius = {});
std::pair<Contour, Contour> split_at_radius(const Contour& c, double r_tilde);
double min_modulus(const Contour& c);
double arc_length_within(const Contour& c, double r);

// Points spread over the contour; rays are sampled out to |z| ~ extent.
std::vector<cplx> sample_points(const Contour& c, int n, double extent);
bool respects_clearance(const Contour& c, const std::vector<cplx>& poles, double clearance);

} // namespace mero
