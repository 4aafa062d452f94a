#pragma once

#include "mero/common.hpp"

namespace mero {

// Complex log-gamma (Lanczos, g = 7) with reflection for Re z < 1/2.
cplx lgamma_c(cplx z);
cplx gamma_c(cplx z);
cplx rgamma_c(cplx z);

// exp(s * log z) with the principal logarithm.
cplx pow_principal(cplx z, cplx s);

bool near_integer(double x, double tol = 1e-12);

} // namespace mero
