#include "mero/special.hpp"

#include <array>
#include <cmath>

namespace mero {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log(sin(pi z)), stable for large |Im z|.
cplx log_sin_pi(cplx z)
{
    double y = z.imag();
    if (std::abs(y) < 30.0)
        return std::log(std::sin(pi * z));
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; one exponential dominates
    cplx s = y > 0 ? -I * pi * z : I * pi * z;
    cplx small = std::exp(-2.0 * s);
    cplx v = s + std::log((1.0 - small) / 2.0);
    return y > 0 ? v + std::log(-1.0 / I) : v + std::log(1.0 / I);
}

} // namespace

cplx lgamma_c(cplx z)
{
    if (z.real() < 0.5) {
        if (z.imag() == 0.0 && near_integer(z.real(), 0.0))
            throw DomainViolation("gamma pole at nonpositive integer");
        return std::log(pi) - log_sin_pi(z) - lgamma_c(1.0 - z);
    }
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (std::size_t i = 1; i < lanczos_c.size(); ++i)
        x += lanczos_c[i] / (z + double(i));
    cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma_c(cplx z)
{
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0)
        return std::tgamma(z.real());
    return std::exp(lgamma_c(z));
}

cplx rgamma_c(cplx z)
{
    if (z.imag() == 0.0 && z.real() <= 0.0 && near_integer(z.real(), 0.0))
        return 0.0;
    return std::exp(-lgamma_c(z));
}

cplx pow_principal(cplx z, cplx s)
{
    return std::exp(s * std::log(z));
}

bool near_integer(double x, double tol)
{
    return std::abs(x - std::round(x)) <= tol;
}

} // namespace mero
