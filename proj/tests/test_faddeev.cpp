#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "mero/faddeev.hpp"
#include "oracles.hpp"

using namespace mero;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<std::pair<int, double>> golden_roots()
{
    const char* dir = std::getenv("MERO_SOURCE_DIR");
    std::ifstream in(std::string(dir ? dir : ".") + "/tests/golden/r_table.txt");
    std::vector<std::pair<int, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        int n;
        double r;
        std::istringstream(line) >> n >> r;
        out.push_back({n, r});
    }
    return out;
}

} // namespace

TEST_CASE("value does not depend on the rotation of the line")
{
    cplx a = faddeev::eval_gF(1.0, 0.2, 0.0, 1e-12);
    cplx b = faddeev::eval_gF(1.0, 0.2, 0.3, 1e-12);
    cplx c = faddeev::eval_gF(1.0, 0.2, -0.3, 1e-12);
    CHECK(std::abs(a - b) < 1e-8);
    CHECK(std::abs(a - c) < 1e-8);
    CHECK(rel(faddeev::eval_S(1.0, 0.2), std::exp(a / 4.0)) < 1e-10);
}

TEST_CASE("g(w) + g(-w) is twice the even part")
{
    auto p = faddeev::problem(0.0);
    auto even = p;
    even.moments.reset();
    even.kernel.K = [](cplx w, cplx z) { return std::cosh(w * z) / (std::sinh(pi * z) * z); };
    const cplx w(0.8, 0.3), gamma = 0.25;
    cplx lhs = evaluate_g(p, w, gamma, 1e-12) + evaluate_g(p, -w, gamma, 1e-12);
    cplx rhs = 2.0 * evaluate_g(even, w, gamma, 1e-12);
    CHECK(rel(lhs, rhs) < 1e-10);
}

TEST_CASE("small gamma is dominated by the leading term")
{
    auto p = faddeev::problem(0.0);
    const cplx w = 1.0, gamma = 0.02;
    cplx g = evaluate_g(p, w, gamma, 1e-12);
    cplx lead = faddeev::coeff(-1) * oracle::faddeev_moment(0, w) / gamma;
    // next term is a_1 h_1 gamma, relative size ~ gamma^2
    CHECK(std::abs(g - lead) / std::abs(lead) < 1e-3);
    cplx with_next = lead + faddeev::coeff(1) * oracle::faddeev_moment(1, w) * gamma;
    CHECK(std::abs(g - with_next) < std::abs(g - lead) * 1e-2);
}

TEST_CASE("P2n structure")
{
    const cplx w = 1.0;
    CHECK(faddeev::coeff(1).real() == doctest::Approx(-1.0 / 6).epsilon(1e-15));
    for (int m = 1; m <= 8; ++m) {
        double b = oracle::bernoulli_table(2 * m)[2 * m] / std::tgamma(2 * m + 1.0);
        CHECK(faddeev::coeff(2 * m - 1).real() ==
              doctest::Approx(2 * (1 - std::pow(2.0, 2 * m - 1)) * b).epsilon(1e-12));
        CHECK(faddeev::coeff(2 * m) == 0.0);
    }
    // n = 0: one term, (1/4) a_{-1} h_{-1} / gamma
    cplx p0 = faddeev::P2n(w, 0.2, 0);
    CHECK(rel(p0, oracle::faddeev_moment(0, w) / (4 * 0.2)) < 1e-10);
    for (int n = 0; n <= 4; ++n) {
        CAPTURE(n);
        CHECK(rel(faddeev::P2n(w, -0.2, n), -faddeev::P2n(w, 0.2, n)) < 1e-14);
    }
}

TEST_CASE("root table")
{
    auto table = golden_roots();
    REQUIRE(table.size() == 5u);
    for (auto [n, r] : table) {
        double x = faddeev::rn_root(n);
        CAPTURE(n);
        CHECK(std::abs(x - r) < 1e-10);
        CHECK(std::abs(x - oracle::rn_root(n)) < 1e-12);
    }
    for (int n = 2; n <= 40; n += 2) {
        double r = faddeev::rn_root(n);
        CHECK(r > 3 * pi / 4);
        CHECK(r < pi);
    }
    CHECK_THROWS_AS(faddeev::rn_root(0), DomainViolation);
}

TEST_CASE("constant tiers")
{
    for (int n = 1; n <= 6; ++n) {
        auto t = faddeev::CtildeF(n, 0.0, 0.0);
        CAPTURE(n);
        CHECK(t.exact <= t.envelope);
        CHECK(t.envelope <= t.weakest);
        CHECK(t.weakest == doctest::Approx(3 * std::pow(2 / pi, 2 * n) / (1 - std::exp(-2 * pi))).epsilon(1e-14));
    }
    auto a = faddeev::CtildeF(2, 0.0, 1.5), b = faddeev::CtildeF(2, 0.0, 1.5707);
    CHECK(b.exact > 100 * a.exact);
    CHECK_THROWS_AS(faddeev::CtildeF(2, 0.0, pi / 2 + 0.1), DomainViolation);
}

TEST_CASE("FE holds on a grid")
{
    for (cplx w : {cplx(0.0), cplx(1.0), cplx(-1.5, 0.4)})
        for (cplx gamma : {cplx(0.2), cplx(0.1, 0.05), cplx(0.3, -0.1)})
            for (int n = 1; n <= 3; ++n)
                for (const auto& c : faddeev::verify_FE(w, gamma, 0.0, n)) {
                    CAPTURE(c.theorem);
                    CAPTURE(n);
                    CHECK(c.pass);
                }
}

TEST_CASE("FE remainder scales like |gamma|^{2n}")
{
    const int n = 2;
    std::vector<double> r;
    for (double g : {0.2, 0.1, 0.05}) {
        auto c = faddeev::verify_FE(1.0, g, 0.0, n);
        r.push_back(c[0].measured / std::pow(g, 2 * n));
    }
    CHECK(r[1] <= r[0] * 1.01);
    CHECK(r[2] <= r[1] * 1.01);
}

TEST_CASE("FE off the real gamma axis with a rotated line")
{
    const cplx gamma = std::polar(0.1, 0.3);
    for (const auto& c : faddeev::verify_FE(1.0, gamma, 0.4, 2))
        CHECK(c.pass);
}

TEST_CASE("Borel function at the origin and its poles")
{
    for (cplx w : {cplx(1.0), cplx(0.3, 0.2), cplx(-2.0)}) {
        cplx b0 = faddeev::BwF(w, 0.0);
        CHECK(rel(b0, faddeev::coeff(1) * faddeev::h1_closed(w)) < 1e-12);
        CHECK(rel(b0, I / (3.0 * (1.0 + std::exp(-I * w)))) < 1e-12);
    }
    auto poles = faddeev::BwF_poles(1.0, 30.0);
    double nearest = inf;
    for (cplx p : poles) {
        nearest = std::min(nearest, std::abs(p));
        // p = +- i pi n (pi - w + 2 pi j) lies on the imaginary axis for real w
        CHECK(std::abs(p.real()) < 1e-12);
    }
    CHECK(nearest == doctest::Approx(pi * (pi - 1)).epsilon(1e-14));
    CHECK_THROWS_AS(faddeev::BwF(1.0, I * pi * (pi - 1)), NumericalError);
    CHECK_THROWS_AS(faddeev::BwF(pi, 0.5), DomainViolation);
}

TEST_CASE("Taylor radius of the Borel function matches the nearest pole")
{
    auto p = faddeev::problem(0.0);
    auto b = borel_transform(assemble_formal_series(p, 1.0, 61, 1e-13));
    // root test on the last nonzero Taylor coefficients
    double est = 0;
    for (int l = 56; l <= 60; l += 2)
        est = std::pow(std::abs(b.b[l]), -1.0 / l);
    CHECK(est == doctest::Approx(pi * (pi - 1)).epsilon(0.05));
    CHECK(b.radius == doctest::Approx(pi * (pi - 1)).epsilon(0.05));
}

TEST_CASE("Gevrey-1 growth of the coefficients")
{
    auto p = faddeev::problem(0.0);
    auto g = assemble_formal_series(p, 1.0, 21, 1e-13);
    const double R = pi * (pi - 1);
    for (int m = 8; m <= 11; ++m) {
        double v = std::pow(std::abs(g.coeff(2 * m - 1)) / std::tgamma(2 * m + 1.0), 1.0 / (2 * m));
        CAPTURE(m);
        CHECK(v * R == doctest::Approx(1.0).epsilon(0.1));
    }
    auto d = gevrey1_diagnose(g);
    CHECK_FALSE(d.convergent);
}
