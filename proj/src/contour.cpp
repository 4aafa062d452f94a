#include "mero/contour.hpp"

#include <algorithm>

namespace mero {

cplx ArcSegment::point(double t) const
{
    if (kind == SegmentKind::arc)
        return anchor + radius * std::polar(1.0, angle + t);
    return anchor + t * std::polar(1.0, angle);
}

cplx ArcSegment::derivative(double t) const
{
    if (kind == SegmentKind::arc)
        return I * radius * std::polar(1.0, angle + t);
    return std::polar(1.0, angle);
}

ArcSegment ArcSegment::restricted(double a, double b) const
{
    ArcSegment s = *this;
    s.t0 = a;
    s.t1 = b;
    if (kind == SegmentKind::ray && !std::isinf(b)) {
        s.kind = SegmentKind::line;
    }
    return s;
}

ArcSegment line_segment(cplx a, cplx b)
{
    ArcSegment s;
    s.kind = SegmentKind::line;
    s.anchor = a;
    s.angle = std::arg(b - a);
    s.t1 = std::abs(b - a);
    return s;
}

ArcSegment ray(cplx anchor, double angle, bool inward)
{
    ArcSegment s;
    s.kind = SegmentKind::ray;
    s.anchor = anchor;
    s.angle = angle;
    s.t1 = inf;
    s.reversed = inward;
    return s;
}

ArcSegment arc(cplx centre, double radius, double from, double to)
{
    ArcSegment s;
    s.kind = SegmentKind::arc;
    s.anchor = centre;
    s.radius = radius;
    s.angle = std::min(from, to);
    s.t1 = std::abs(to - from);
    s.reversed = to < from;
    return s;
}

Contour make_rotated_line(double theta_tilde, double offset)
{
    if (!(std::abs(theta_tilde) < pi / 2))
        throw DomainViolation("rotated line needs |theta_tilde| < pi/2");
    cplx apex = I * offset * std::polar(1.0, theta_tilde);
    Contour c;
    c.segments.push_back(ray(apex, theta_tilde + pi, true));
    c.segments.push_back(ray(apex, theta_tilde, false));
    return c;
}

Contour make_hankel(double epsilon, bool deformed)
{
    if (!(epsilon > 0))
        throw DomainViolation("Hankel contour needs epsilon > 0");
    Contour c;
    if (deformed) {
        const double phi = pi / 12;
        c.segments.push_back(ray(0.0, -(pi - phi), true));
        c.segments.push_back(ray(0.0, pi - phi, false));
        return c;
    }
    c.segments.push_back(ray(cplx(0, -epsilon), pi, true));
    c.segments.push_back(arc(0.0, epsilon, -pi / 2, pi / 2));
    c.segments.push_back(ray(cplx(0, epsilon), pi, false));
    return c;
}

Contour make_circle(cplx centre, double radius)
{
    Contour c;
    c.segments.push_back(arc(centre, radius, 0.0, 2 * pi));
    return c;
}

Contour make_wedge(double in_angle, double out_angle, double eps)
{
    Contour c;
    if (eps > 0) {
        c.segments.push_back(ray(std::polar(eps, in_angle), in_angle, true));
        c.segments.push_back(arc(0.0, eps, in_angle, out_angle));
        c.segments.push_back(ray(std::polar(eps, out_angle), out_angle, false));
    } else {
        c.segments.push_back(ray(0.0, in_angle, true));
        c.segments.push_back(ray(0.0, out_angle, false));
    }
    return c;
}

Contour make_v_contour(cplx apex, double beta)
{
    Contour c;
    c.segments.push_back(ray(apex, pi - beta, true));
    c.segments.push_back(ray(apex, beta, false));
    return c;
}

Contour reversed(const Contour& c)
{
    Contour r = c;
    std::reverse(r.segments.begin(), r.segments.end());
    for (auto& s : r.segments)
        s.reversed = !s.reversed;
    return r;
}

namespace {

// For lines: z(t) = a + t u, |z|^2 = q^2 + (p + t)^2.
void line_pq(const ArcSegment& s, double& p, double& q)
{
    cplx v = std::conj(s.anchor) * std::polar(1.0, s.angle);
    p = v.real();
    q = v.imag();
}

// Parameter intervals of s inside the closed disc of radius r.
std::vector<std::pair<double, double>> inside_intervals(const ArcSegment& s, double r)
{
    std::vector<std::pair<double, double>> out;
    if (s.kind != SegmentKind::arc) {
        double p, q;
        line_pq(s, p, q);
        if (r * r < q * q)
            return out;
        double h = std::sqrt(r * r - q * q);
        double a = std::max(s.t0, -p - h), b = std::min(s.t1, -p + h);
        if (a < b)
            out.emplace_back(a, b);
        return out;
    }
    // arcs: |z(t)| - r changes sign at most twice; locate by sampling and bisection
    const int n = 2048;
    auto g = [&](double t) { return std::abs(s.point(t)) - r; };
    double prev_t = s.t0, prev = g(prev_t);
    double open = prev <= 0 ? s.t0 : NAN;
    for (int k = 1; k <= n; ++k) {
        double t = s.t0 + (s.t1 - s.t0) * k / n, v = g(t);
        if ((prev <= 0) != (v <= 0)) {
            double lo = prev_t, hi = t;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                ((g(mid) <= 0) == (prev <= 0) ? lo : hi) = mid;
            }
            double root = 0.5 * (lo + hi);
            if (v <= 0)
                open = root;
            else {
                out.emplace_back(open, root);
                open = NAN;
            }
        }
        prev_t = t;
        prev = v;
    }
    if (!std::isnan(open) && open < s.t1)
        out.emplace_back(open, s.t1);
    return out;
}

std::vector<std::pair<double, double>> complement(const ArcSegment& s,
                                                  const std::vector<std::pair<double, double>>& in)
{
    std::vector<std::pair<double, double>> out;
    double cur = s.t0;
    for (auto [a, b] : in) {
        if (a > cur)
            out.emplace_back(cur, a);
        cur = b;
    }
    if (cur < s.t1)
        out.emplace_back(cur, s.t1);
    return out;
}

double cos_theta_at(const ArcSegment& s, double t)
{
    cplx z = s.point(t), dz = s.derivative(t);
    double nz = std::abs(z);
    if (nz < 1e-300)
        return inf;
    double v = std::abs((std::conj(z) * dz).real()) / (nz * std::abs(dz));
    return v < 1e-14 ? 0.0 : v;
}

// inf |cos Theta| over s restricted to [a, b].
double cos_bound_piece(const ArcSegment& s, double a, double b)
{
    if (s.kind != SegmentKind::arc) {
        // |cos Theta| = |p + t| / |z| is monotone in |p + t|: take the point closest to 0
        double p, q;
        line_pq(s, p, q);
        if (std::abs(q) < 1e-300)
            return 1.0;
        double t = std::clamp(-p, a, b);
        if (std::isinf(t))
            return 1.0;
        return cos_theta_at(s, t);
    }
    if (std::abs(s.anchor) == 0.0)
        return 0.0;
    double m = inf;
    const int n = 4096;
    for (int k = 0; k <= n; ++k)
        m = std::min(m, cos_theta_at(s, a + (b - a) * k / n));
    return m;
}

} // namespace

double cos_theta_bound(const Contour& c, std::optional<double> outside_radius)
{
    double m = inf;
    for (const auto& s : c.segments) {
        if (outside_radius) {
            for (auto [a, b] : complement(s, inside_intervals(s, *outside_radius)))
                m = std::min(m, cos_bound_piece(s, a, b));
        } else {
            m = std::min(m, cos_bound_piece(s, s.t0, s.t1));
        }
    }
    return std::isinf(m) ? 1.0 : m;
}

std::pair<Contour, Contour> split_at_radius(const Contour& c, double r_tilde)
{
    if (!(r_tilde > 0))
        throw DomainViolation("split radius must be positive");
    Contour inner, outer;
    inner.clearance = outer.clearance = c.clearance;
    auto emit = [](Contour& dst, const ArcSegment& s, std::vector<std::pair<double, double>> iv) {
        if (s.reversed)
            std::reverse(iv.begin(), iv.end());
        for (auto [a, b] : iv)
            if (b > a)
                dst.segments.push_back(s.restricted(a, b));
    };
    for (const auto& s : c.segments) {
        auto in = inside_intervals(s, r_tilde);
        emit(inner, s, in);
        emit(outer, s, complement(s, in));
    }
    return {inner, outer};
}

double min_modulus(const Contour& c)
{
    double m = inf;
    for (const auto& s : c.segments) {
        if (s.kind != SegmentKind::arc) {
            double p, q;
            line_pq(s, p, q);
            double t = std::clamp(-p, s.t0, s.t1);
            m = std::min(m, std::hypot(q, p + t));
        } else {
            m = std::min({m, std::abs(s.point(s.t0)), std::abs(s.point(s.t1))});
            double cm = std::abs(s.anchor);
            if (cm == 0.0) {
                m = std::min(m, s.radius);
                continue;
            }
            // closest point of the full circle, if it lies on the arc
            double phi = std::arg(-s.anchor) - s.angle;
            for (int k = -2; k <= 2; ++k) {
                double t = phi + 2 * pi * k;
                if (t >= s.t0 && t <= s.t1)
                    m = std::min(m, std::abs(cm - s.radius));
            }
        }
    }
    return m;
}

double arc_length_within(const Contour& c, double r)
{
    double L = 0;
    for (const auto& s : c.segments)
        for (auto [a, b] : inside_intervals(s, r))
            L += std::isinf(b) ? inf : s.speed() * (b - a);
    return L;
}

std::vector<cplx> sample_points(const Contour& c, int n, double extent)
{
    std::vector<cplx> out;
    int per = std::max(1, n / std::max(1, c.d()));
    for (const auto& s : c.segments) {
        for (int k = 0; k < per; ++k) {
            double u = (k + 0.5) / per, t;
            if (s.infinite()) {
                double lo = std::max(s.t0, 1e-3), hi = std::max(extent, lo * 2);
                t = lo * std::pow(hi / lo, u);
            } else {
                t = s.t0 + (s.t1 - s.t0) * u;
            }
            out.push_back(s.point(t));
        }
    }
    return out;
}

bool respects_clearance(const Contour& c, const std::vector<cplx>& poles, double clearance)
{
    for (const auto& s : c.segments) {
        for (cplx p : poles) {
            double dist;
            if (s.kind != SegmentKind::arc) {
                cplx v = std::conj(s.anchor - p) * std::polar(1.0, s.angle);
                double t = std::clamp(-v.real(), s.t0, s.t1);
                dist = std::abs(s.point(t) - p);
            } else {
                double m = inf;
                for (int k = 0; k <= 512; ++k)
                    m = std::min(m, std::abs(s.point(s.t0 + (s.t1 - s.t0) * k / 512) - p));
                dist = m;
            }
            if (dist < clearance)
                return false;
        }
    }
    return true;
}

} // namespace mero
