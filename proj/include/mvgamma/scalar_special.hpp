#pragma once

#include <stdexcept>

namespace mvg {

// Derivative order of the psi family: 0 = digamma, 1 = trigamma, ...
// Orders above 12 are rejected; the asymptotic-series error budget is only
// validated up to that order, and no caller needs more.
class PolyOrder {
public:
    static constexpr int kMax = 12;

    explicit PolyOrder(int k) : k_(k) {
        if (k < 0 || k > kMax)
            throw std::domain_error("PolyOrder: order must be in [0, 12], got " +
                                    std::to_string(k));
    }

    int value() const noexcept { return k_; }

private:
    int k_;
};

// ln Gamma(x) for x > 0. Relative error <= 1e-13 on [1e-3, 1e6], measured
// against max(1, |value|) near the zeros at x = 1 and x = 2.
double ln_gamma(double x);

// psi(x) = d/dx ln Gamma(x) for x > 0. Absolute error <= 1e-12 on [1e-3, 1e6].
double digamma(double x);

// psi^(k)(x) for x > 0. k = 0 is digamma; for k >= 1 the sign is (-1)^(k+1).
// Relative error <= 1e-11 on [1e-2, 1e6].
double polygamma(PolyOrder k, double x);

}  // namespace mvg
