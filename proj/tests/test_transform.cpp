#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mero/classical.hpp"
#include "mero/faddeev.hpp"
#include "mero/transform.hpp"
#include "oracles.hpp"

using namespace mero;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

classical::ExampleSpec spec(classical::Example e, double alpha = 0.75)
{
    classical::ExampleSpec s;
    s.id = e;
    s.alpha = alpha;
    return s;
}

} // namespace

TEST_CASE("Faddeev value does not depend on the line offset")
{
    auto p = faddeev::problem(0.0);
    const cplx w = 1, gamma = 0.2;
    cplx a = evaluate_g_on(p, make_rotated_line(0, 0.25), w, gamma, 1e-12).value;
    cplx b = evaluate_g_on(p, make_rotated_line(0, 0.75), w, gamma, 1e-12).value;
    cplx c = evaluate_g(p, w, gamma, 1e-12);
    CHECK(rel(a, b) < 1e-10);
    CHECK(rel(a, c) < 1e-10);
    // reference value at (1, 0.2)
    CHECK(std::abs(c - cplx(-6.52201663709, 5.75800366758)) < 1e-9);
}

TEST_CASE("Gamma value does not depend on the Hankel offset")
{
    auto p = classical::make_problem(spec(classical::Example::gamma));
    const cplx w(1.3, 0.4), gamma = 0.6;
    cplx a = evaluate_g_on(p, make_hankel(0.2, false), w, gamma, 1e-12).value;
    cplx b = evaluate_g_on(p, make_hankel(1.5, false), w, gamma, 1e-12).value;
    CHECK(rel(a, b) < 1e-10);
}

TEST_CASE("the transform is linear in the kernel")
{
    auto p = faddeev::problem(0.0);
    auto q = p;
    const cplx s(2, -1);
    q.kernel.K = [K = p.kernel.K, s](cplx w, cplx z) { return s * K(w, z) + K(w, z) * z; };
    auto r = p;
    r.kernel.K = [K = p.kernel.K](cplx w, cplx z) { return K(w, z) * z; };
    q.moments.reset();
    r.moments.reset();
    const cplx w(0.7, 0.2), gamma = 0.3;
    cplx lhs = evaluate_g(q, w, gamma, 1e-12);
    cplx rhs = s * evaluate_g(p, w, gamma, 1e-12) + evaluate_g(r, w, gamma, 1e-12);
    CHECK(rel(lhs, rhs) < 1e-10);
}

TEST_CASE("Faddeev moments against the polylog oracle")
{
    auto p = faddeev::problem(0.0);
    for (cplx w : {cplx(0.0), cplx(1.0), cplx(-1.4, 0.3)}) {
        for (int m = 0; m <= 3; ++m) {
            cplx h = moment_h(p, 2 * m - 1, w, 1e-12);
            cplx ref = oracle::faddeev_moment(m, w);
            CAPTURE(m);
            CAPTURE(w);
            CHECK(rel(h, ref) < 1e-9);
        }
        CHECK(rel(moment_h(p, 1, w, 1e-12), faddeev::h1_closed(w)) < 1e-10);
    }
    CHECK(rel(moment_h(p, -1, 0.0, 1e-12), cplx(0, pi * pi / 6)) < 1e-10);
}

TEST_CASE("classical reference values")
{
    CHECK(rel(classical::gamma_eval(0.5, 1.0, 0.75, 1e-12), std::sqrt(pi)) < 1e-10);
    CHECK(rel(classical::recip_gamma_eval(1.0, 1.0, 0.75, 1e-12), 1.0) < 1e-10);
    CHECK(rel(classical::zeta_eval(2.0, 1.0, 0.5, 1e-12), pi * pi / 6) < 1e-10);
    auto z = classical::make_problem(spec(classical::Example::riemann_zeta, 0.5));
    CHECK(rel(moment_h(z, 0, 2.0, 1e-12), 4.0) < 1e-10);
}

TEST_CASE("conjugation symmetry")
{
    const cplx w(1.7, 0.6), gamma(0.8, 0.1);
    cplx a = classical::gamma_eval(w, gamma, 0.75, 1e-12);
    cplx b = classical::gamma_eval(std::conj(w), std::conj(gamma), 0.75, 1e-12);
    CHECK(rel(a, std::conj(b)) < 1e-10);
}

TEST_CASE("Faddeev reflection differs by the residue at the origin")
{
    auto p = faddeev::problem(0.0);
    const cplx w(0.5, 0.2), gamma(0.2, 0.05);
    cplx c = evaluate_g(p, w, gamma, 1e-12);
    cplx d = evaluate_g(p, std::conj(w), std::conj(gamma), 1e-12);
    // the reflected line runs below the pole at 0 in the same direction
    cplx loop = evaluate_g_on(p, make_circle(0.0, 0.1), w, gamma, 1e-12).value;
    CHECK(rel(c - std::conj(d), -loop) < 1e-10);
}

TEST_CASE("truncated series edge cases")
{
    auto p = faddeev::problem(0.0);
    CHECK(truncated_series(p, -2, 1.0, 0.2, 1e-12) == 0.0);
    // the only surviving term at n = -1 is h_{-1} / gamma
    cplx t = truncated_series(p, -1, 1.0, 0.2, 1e-12);
    CHECK(rel(t, moment_h(p, -1, 1.0, 1e-12) / 0.2) < 1e-14);
    auto g = assemble_formal_series(p, 1.0, 6, 1e-12);
    CHECK(g.n0 == 1);
    CHECK(g.split == 1);
    CHECK(g.c.size() == 8u);
    for (int m = 0; m <= 6; m += 2)
        CHECK(g.coeff(m) == 0.0);
}

TEST_CASE("Airy leading coefficient and vanishing moments")
{
    CHECK(classical::airy_coeff(0, 0.5) == doctest::Approx(1.0));
    auto p = classical::make_problem(spec(classical::Example::airy, 0.5));
    const cplx w = 1.0;
    for (int m = 0; m <= 4; ++m)
        CHECK(std::abs(moment_h(p, m, w, 1e-10)) < 1e-9);
    // yet the function itself is 2 pi i Ai(w), not zero
    cplx g = classical::airy_eval(w, 1.0, 0.5, pi / 3, 1e-12);
    CHECK(rel(g, 2.0 * pi * I * oracle::airy_ai(1.0)) < 1e-9);
}

TEST_CASE("moment cache round trip")
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("mero_cache_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    set_moment_cache_dir(dir.string());
    {
        MomentTable t("round/trip");
        t.insert(3, cplx(1, 2), 1e-10, {cplx(0.25, -4), 1e-13});
        t.insert(3, cplx(1, 2), 1e-10, {cplx(9, 9), 0}); // first write wins
    }
    {
        std::ofstream torn(dir / "round_trip.jsonl", std::ios::app);
        torn << "{\"m\": 4, \"wr\"";
    }
    MomentTable u("round/trip");
    MomentTable::Entry e;
    REQUIRE(u.lookup(3, cplx(1, 2), 1e-10, e));
    CHECK(e.value == cplx(0.25, -4));
    CHECK(e.error == 1e-13);
    CHECK_FALSE(u.lookup(3, cplx(1, 2), 1e-12, e));
    CHECK(u.size() == 1u);
    set_moment_cache_dir("");
    fs::remove_all(dir);
}

TEST_CASE("declared envelopes hold for Faddeev and fail when understated")
{
    auto p = faddeev::problem(0.0);
    const cplx w = 1, gamma = 1;
    auto h = faddeev::hypotheses(w, gamma, 0.0, 2);
    p.kernel.c_w = h.c_w;
    p.kernel.delta1 = h.delta1;
    auto ok = check_envelopes(p, w, gamma);
    CAPTURE(ok.kernel_ratio);
    CAPTURE(ok.function_ratio);
    CHECK(ok.ok);
    CHECK(ok.function_ratio > 0.5);
    p.function.c_tilde = [](cplx) { return 0.5; };
    CHECK_FALSE(check_envelopes(p, w, gamma).ok);
}

TEST_CASE("domain guards")
{
    auto p = faddeev::problem(0.0);
    CHECK_THROWS_AS(evaluate_g(p, 1.0, 0.0, 1e-10), DomainViolation);
    CHECK_THROWS_AS(evaluate_g(p, 5.0, 0.2, 1e-10), DomainViolation);
    CHECK_THROWS_AS(evaluate_g(p, 1.0, cplx(0, 0.2), 1e-10), DomainViolation);
    CHECK_THROWS_AS(evaluate_g(p, 1.0, cplx(-0.01, 0.2), 1e-10), DomainViolation);
}
