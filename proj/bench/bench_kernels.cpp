// Serial reference path vs OpenMP panels on the quadrature-heavy kernels.
// Usage: bench_kernels [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "mero/borel.hpp"
#include "mero/classical.hpp"
#include "mero/faddeev.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mero;

namespace {

struct Timing {
    double seconds;
    cplx value;
};

Timing time_it(int repeats, const std::function<cplx()>& f)
{
    cplx v = f(); // warm-up, also fills any caches
    auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < repeats; ++k)
        v = f();
    return {std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats, v};
}

void row(const char* name, int repeats, const std::function<cplx(Exec)>& f)
{
    auto s = time_it(repeats, [&] { return f(Exec::serial); });
    auto p = time_it(repeats, [&] { return f(Exec::parallel); });
    std::printf("%-28s %12.3e %12.3e %8.2fx %10.1e\n", name, s.seconds, p.seconds, s.seconds / p.seconds,
                std::abs(s.value - p.value) / std::abs(s.value));
}

} // namespace

int main(int argc, char** argv)
{
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 20;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %12s %12s %9s %10s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "rel diff");

    row("faddeev g(1, 0.2)", repeats,
        [](Exec e) { return evaluate_g(faddeev::problem(0.0, e), 1.0, 0.2, 1e-12); });
    row("zeta g(1.5+0.5i, 0.3)", repeats, [](Exec e) {
        classical::ExampleSpec s;
        s.id = classical::Example::riemann_zeta;
        s.alpha = 0.75;
        return evaluate_g(classical::make_problem(s, e), cplx(1.5, 0.5), 0.3, 1e-12);
    });
    row("gamma g(0.5, 0.5)", repeats, [](Exec e) {
        classical::ExampleSpec s;
        s.alpha = 0.75;
        return evaluate_g(classical::make_problem(s, e), 0.5, 0.5, 1e-12);
    });
    row("Borel integral B_1(2+i)", repeats, [](Exec e) {
        return borel_via_integral(faddeev::problem(0.0, e), 1.0, cplx(2, 1), faddeev::inv_laplace_phi, 1e-12).value;
    });
    row("Laplace of BwF, theta=0.3", repeats, [](Exec e) {
        auto B = faddeev::borel_function(1.0);
        return laplace_along_ray_full(B.eval, B.growth, 0.3, std::polar(0.3, 0.15), 1e-12, e).value;
    });
}
