#include "doctest.h"
#include "mero/borel.hpp"
#include "mero/faddeev.hpp"

using namespace mero;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

GrowthBound constant_growth(double C, double alpha = 0)
{
    GrowthBound g;
    g.alpha = alpha;
    g.terms = {{C, 0}};
    return g;
}

} // namespace

TEST_CASE("Laplace transform of elementary Borel functions")
{
    const cplx gamma(0.4, 0.1);
    const double th = std::arg(gamma);
    CHECK(rel(laplace_along_ray([](cplx) { return cplx(1); }, constant_growth(1), th, gamma, 1e-13), gamma) < 1e-12);
    for (int m = 1; m <= 5; ++m) {
        GrowthBound g;
        g.terms = {{1.0 / std::tgamma(m + 1.0), m}};
        auto psi = [m](cplx xi) { return std::pow(xi, m) / std::tgamma(m + 1.0); };
        CAPTURE(m);
        CHECK(rel(laplace_along_ray(psi, g, th, gamma, 1e-13), std::pow(gamma, m + 1)) < 1e-11);
    }
    const cplx a(0.7, -0.3);
    auto e = laplace_along_ray([a](cplx xi) { return std::exp(a * xi); }, constant_growth(1, std::abs(a)), th, gamma,
                               1e-13);
    CHECK(rel(e, gamma / (1.0 - a * gamma)) < 1e-11);
}

TEST_CASE("Laplace of the formal Borel transform gives back the series")
{
    FormalGammaSeries s;
    s.n0 = 0;
    s.split = 1;
    s.c = {0.0, 2.0, cplx(0, -1), 0.5, 3.0};
    auto b = borel_transform(s);
    GrowthBound g;
    for (std::size_t l = 0; l < b.b.size(); ++l)
        g.terms.push_back({std::abs(b.b[l]), int(l)});
    const cplx gamma = 0.3;
    cplx L = laplace_along_ray([&](cplx xi) { return b.eval(xi); }, g, 0.0, gamma, 1e-14);
    CHECK(rel(L, s.partial(gamma, 4)) < 1e-12);
}

TEST_CASE("admissibility of rays")
{
    CHECK(admissible(0.0, 0.5, 1.0));
    CHECK_FALSE(admissible(0.0, 0.5, 2.0 + 1e-9));
    CHECK_FALSE(admissible(pi / 2, 0.5, 0.0));
    CHECK(admissible(pi / 4, cplx(0.1, 0.1), 0.0));
    CHECK_FALSE(admissible(0.0, 0.0, 0.0));
    CHECK_THROWS_AS(laplace_along_ray([](cplx) { return cplx(1); }, constant_growth(1, 3), 0.0, 0.5, 1e-10),
                    DomainViolation);
}

TEST_CASE("Laplace value does not depend on the ray when no pole is crossed")
{
    const cplx gamma = 0.5;
    auto psi = [](cplx xi) { return std::exp(-xi) + 1.0 / (xi + 3.0); };
    GrowthBound g;
    g.alpha = 1;
    g.terms = {{1.0, 0}, {1.0 / 3.0, 0}};
    cplx ref = laplace_along_ray(psi, g, 0.0, gamma, 1e-13);
    for (double th : {-0.9, -0.4, 0.4, 0.9})
        CHECK(rel(laplace_along_ray(psi, g, th, gamma, 1e-13), ref) < 1e-11);
}

TEST_CASE("Stokes jump across a synthetic simple pole")
{
    const cplx p = 2.0;
    BorelFunction B;
    B.eval = [p](cplx xi) { return 1.0 / (xi - p); };
    B.poles = [p](double maxmod) { return std::abs(p) <= maxmod ? std::vector<cplx>{p} : std::vector<cplx>{}; };
    const double eps = 0.4;
    B.growth = constant_growth(1 / (std::abs(p) * std::sin(eps)));
    const cplx gamma = 0.5;
    auto d = stokes_jump(B, 0.0, gamma, eps, 1e-12);
    const cplx expect = 2.0 * pi * I * std::exp(-p / gamma);
    REQUIRE(d.poles.size() == 1u);
    CHECK(std::abs(d.jump - expect) < 1e-13);
    CHECK(std::abs(d.lateral - expect) < 1e-11);

    // no poles: no jump, and the lateral transforms agree
    BorelFunction E;
    E.eval = [](cplx xi) { return std::exp(-xi); };
    E.poles = [](double) { return std::vector<cplx>{}; };
    E.growth = constant_growth(1, 1);
    auto z = stokes_jump(E, 0.0, gamma, 0.3, 1e-12);
    CHECK(z.jump == 0.0);
    CHECK(std::abs(z.lateral) < 1e-11);

    // a pole inside the sector but off the ray is refused
    BorelFunction F = B;
    F.poles = [](double) { return std::vector<cplx>{std::polar(2.0, 0.1)}; };
    CHECK_THROWS_AS(stokes_jump(F, 0.0, gamma, 0.4, 1e-12), DomainViolation);
}

TEST_CASE("lateral difference is antisymmetric in the side")
{
    const cplx p = 3.0;
    auto psi = [p](cplx xi) { return 1.0 / (xi - p); };
    auto g = constant_growth(1 / (3 * std::sin(0.3)));
    const cplx gamma = 0.6;
    cplx below = laplace_along_ray(psi, g, -0.3, gamma, 1e-13);
    cplx above = laplace_along_ray(psi, g, 0.3, gamma, 1e-13);
    // psi is real on the real axis, so the two sides are conjugate
    CHECK(std::abs(below - std::conj(above)) < 1e-12);
    CHECK(std::abs((below - above) - 2.0 * pi * I * std::exp(-p / gamma)) < 1e-11);
}

TEST_CASE("alpha_theta examples")
{
    // a single pole class at angle 0 and a half-line from 0 to the left
    Contour c;
    c.segments.push_back(ray(0.0, pi, true));
    CHECK(alpha_theta({cplx(2.0)}, c, 0.0) == doctest::Approx(0.0));
    Contour seg;
    seg.segments.push_back(line_segment(cplx(-1, 0), cplx(1, 0)));
    CHECK(alpha_theta({cplx(2.0)}, seg, 0.0) == doctest::Approx(0.5));
    CHECK(alpha_theta({cplx(0, 2.0), cplx(0, -4.0)}, seg, 0.0) == doctest::Approx(0.0));
    CHECK(alpha_theta({cplx(2.0), cplx(-4.0)}, seg, 0.0) == doctest::Approx(0.5));
    CHECK(alpha_theta({std::polar(2.0, pi / 3)}, seg, 0.0) == doctest::Approx(0.25));
    CHECK(alpha_theta({}, seg, 0.0) == 0.0);
    CHECK_THROWS_AS(alpha_theta({cplx(2.0)}, c, pi), DomainViolation);
}

TEST_CASE("Faddeev Borel function: closed form, integral and pole sum agree")
{
    auto p = faddeev::problem(0.0);
    const cplx w = 1.0;
    for (cplx xi : {cplx(0.5), cplx(2.0, 1.0), cplx(-3.0, 0.5)}) {
        cplx closed = faddeev::BwF(w, xi);
        auto integral = borel_via_integral(p, w, xi, faddeev::inv_laplace_phi, 1e-12);
        auto poles = borel_via_pole_sum(faddeev::pole_shell, faddeev::kernel_moment(w), {}, xi, 1e-12);
        CAPTURE(xi);
        CHECK(std::abs(closed - integral.value) < 1e-10);
        CHECK(std::abs(closed - poles.value) < 1e-10);
    }
}

TEST_CASE("Faddeev Borel function against its Taylor series")
{
    auto p = faddeev::problem(0.0);
    const cplx w = 1.0;
    auto b = borel_transform(assemble_formal_series(p, w, 41, 1e-13));
    for (cplx xi : {cplx(0.3), cplx(0.5, 0.5), cplx(-1.0)})
        CHECK(std::abs(b.eval(xi) - faddeev::BwF(w, xi)) < 1e-9);
}

TEST_CASE("Laplace-Borel reconstruction of the Faddeev function")
{
    auto p = faddeev::problem(0.0);
    auto B = faddeev::borel_function(1.0);
    const cplx gamma = 0.3;
    cplx gm = faddeev::coeff(-1) * moment_h(p, -1, 1.0, 1e-13) / gamma;
    cplx rec = laplace_borel_reconstruct(B, gm, 0.0, gamma, 1e-12);
    CHECK(std::abs(rec - evaluate_g(p, 1.0, gamma, 1e-12)) < 1e-10);
    CHECK_THROWS_AS(laplace_borel_reconstruct(B, gm, 0.0, cplx(0, 0.3), 1e-10), DomainViolation);
}

TEST_CASE("alternating series acceleration")
{
    // sum (-1)^{n+1} / n = log 2
    auto s = sum_alternating([](int n) { return cplx((n % 2 ? 1.0 : -1.0) / n); }, 1, 1e-13);
    CHECK(std::abs(s.value - std::log(2.0)) < 1e-12);
}
