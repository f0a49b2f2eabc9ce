#include "mvgamma/scalar_special.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mvg {
namespace {

constexpr double kLnTwoPi = 1.8378770664093454835606594728112;

// Arguments below this are lifted by the recurrence before the asymptotic
// series is applied. At 10 the Bernoulli series below reaches ~1e-15
// relative accuracy for every supported derivative order.
constexpr double kAsymptoticThreshold = 10.0;

// B_{2j}, j = 1..20, exact rationals rounded once to double.
constexpr double kBernoulli2j[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};
constexpr int kBernoulliCount = sizeof(kBernoulli2j) / sizeof(kBernoulli2j[0]);

// k! for k = 0..12, exact in double.
constexpr double kFactorial[] = {
    1.0,      1.0,       2.0,        6.0,         24.0,         120.0,     720.0,
    5040.0,   40320.0,   362880.0,   3628800.0,   39916800.0,   479001600.0,
};

void require_positive(const char* fn, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(fn) + ": argument must be positive and finite, got " +
                                std::to_string(x));
}

// Stirling series for ln Gamma on [kAsymptoticThreshold, inf).
double ln_gamma_asymptotic(double x) {
    const double main = (x - 0.5) * std::log(x) - x + 0.5 * kLnTwoPi;
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double cutoff = 0.25 * std::numeric_limits<double>::epsilon() * std::fabs(main);
    double series = 0.0;
    double power = inv;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= kBernoulliCount; ++j) {
        const double term = kBernoulli2j[j - 1] / ((2.0 * j) * (2.0 * j - 1.0)) * power;
        if (std::fabs(term) >= prev) break;  // asymptotic tail started diverging
        series += term;
        if (std::fabs(term) < cutoff) break;
        prev = std::fabs(term);
        power *= inv2;
    }
    return main + series;
}

// Asymptotic series for psi on [kAsymptoticThreshold, inf).
double digamma_asymptotic(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double main = std::log(x) - 0.5 * inv;
    const double cutoff = 0.25 * std::numeric_limits<double>::epsilon() * std::fabs(main);
    double series = 0.0;
    double power = inv2;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= kBernoulliCount; ++j) {
        const double term = kBernoulli2j[j - 1] / (2.0 * j) * power;
        if (std::fabs(term) >= prev) break;
        series += term;
        if (std::fabs(term) < cutoff) break;
        prev = std::fabs(term);
        power *= inv2;
    }
    return main - series;
}

// Asymptotic series for psi^(k), k >= 1, on [kAsymptoticThreshold, inf):
//   psi^(k)(x) = (-1)^(k-1) (k-1)!/x^k [ 1 + k/(2x)
//                + sum_j C(2j+k-1, 2j) B_{2j} x^(-2j) ].
double polygamma_asymptotic(int k, double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double bracket = 1.0 + 0.5 * k * inv;
    double coeff = 1.0;  // C(2j+k-1, 2j), iteratively updated
    double power = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= kBernoulliCount; ++j) {
        coeff *= static_cast<double>((2 * j - 2 + k) * (2 * j - 1 + k)) /
                 static_cast<double>((2 * j - 1) * (2 * j));
        power *= inv2;
        const double term = coeff * kBernoulli2j[j - 1] * power;
        if (std::fabs(term) >= prev) break;
        bracket += term;
        if (std::fabs(term) < 0.25 * std::numeric_limits<double>::epsilon() * std::fabs(bracket))
            break;
        prev = std::fabs(term);
    }
    const double lead = kFactorial[k - 1] * std::pow(x, -k);
    const double value = lead * bracket;
    return (k % 2 == 1) ? value : -value;
}

}  // namespace

double ln_gamma(double x) {
    require_positive("ln_gamma", x);
    double shift = 0.0;
    if (x < kAsymptoticThreshold) {
        // Gamma(x + n) = x (x+1) ... (x+n-1) Gamma(x); the product stays
        // below 1e10, so one log at the end is safe.
        double product = 1.0;
        while (x < kAsymptoticThreshold) {
            product *= x;
            x += 1.0;
        }
        shift = std::log(product);
    }
    return ln_gamma_asymptotic(x) - shift;
}

double digamma(double x) {
    require_positive("digamma", x);
    double shift = 0.0;
    while (x < kAsymptoticThreshold) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    return digamma_asymptotic(x) + shift;
}

double polygamma(PolyOrder k, double x) {
    require_positive("polygamma", x);
    const int order = k.value();
    if (order == 0) return digamma(x);
    // psi^(k)(x) = psi^(k)(x+1) - (-1)^k k! x^(-k-1); accumulate the shift
    // terms, which carry the sign (-1)^(k+1) of the function itself.
    double shift = 0.0;
    while (x < kAsymptoticThreshold) {
        shift += std::pow(x, -(order + 1));
        x += 1.0;
    }
    shift *= kFactorial[order];
    if (order % 2 == 0) shift = -shift;
    return polygamma_asymptotic(order, x) + shift;
}

}  // namespace mvg
