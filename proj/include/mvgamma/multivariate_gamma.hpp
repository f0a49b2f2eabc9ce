#pragma once

#include "mvgamma/scalar_special.hpp"

namespace mvg {

// ln Gamma_m(z) = m(m-1)/4 ln pi + sum_{j=1}^m ln Gamma(z - (j-1)/2),
// defined for z > (m-1)/2 (open bound, enforced exactly).
double ln_gamma_m(int m, double z);

// k-th derivative of ln Gamma_m: sum_{j=1}^m psi^(k)(z - (j-1)/2).
double psi_m(PolyOrder k, int m, double z);

}  // namespace mvg
