#include "mvgamma/multivariate_gamma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvg {
namespace {

constexpr double kLnPi = 1.1447298858494001741434273513531;

void require_domain(const char* fn, int m, double z) {
    if (m < 1) throw std::domain_error(std::string(fn) + ": m must be >= 1");
    const double bound = 0.5 * (m - 1);
    if (!(z > bound) || !std::isfinite(z))
        throw std::domain_error(std::string(fn) + ": z must exceed (m-1)/2 = " +
                                std::to_string(bound) + ", got " + std::to_string(z));
}

}  // namespace

double ln_gamma_m(int m, double z) {
    require_domain("ln_gamma_m", m, z);
    double sum = 0.25 * m * (m - 1) * kLnPi;
    for (int j = 1; j <= m; ++j) sum += ln_gamma(z - 0.5 * (j - 1));
    return sum;
}

double psi_m(PolyOrder k, int m, double z) {
    require_domain("psi_m", m, z);
    double sum = 0.0;
    for (int j = 1; j <= m; ++j) sum += polygamma(k, z - 0.5 * (j - 1));
    return sum;
}

}  // namespace mvg
