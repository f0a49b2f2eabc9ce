#pragma once

#include <vector>

#include "mvgamma/matrix_core.hpp"

namespace mvg {

// Parameters (a_1, ..., a_{r+1}) of the matrix-variate Dirichlet of dimension
// m. Every a_i must exceed (m-1)/2 so its Gamma_m factor is finite.
struct DirichletParams {
    DirichletParams(int m, std::vector<double> a);

    int m;
    std::vector<double> a;  // r+1 entries

    int r() const noexcept { return static_cast<int>(a.size()) - 1; }
};

// Counts (k_1, ..., k_r) of n trials; k_{r+1} = n - |k| is implicit.
struct MultinomialParams {
    MultinomialParams(int m, int n, std::vector<int> k);

    int m;
    int n;
    std::vector<int> k;  // r entries

    int r() const noexcept { return static_cast<int>(k.size()); }
    int k_last() const noexcept;
};

// Log-density of the type-I matrix-variate Dirichlet at the given partition.
// Zero exponents contribute nothing even on singular blocks (0 * ln 0 := 0);
// a singular block with a positive exponent yields -infinity, with a negative
// exponent a domain error.
double matrix_dirichlet_logpdf(const DirichletParams& params, const MatrixPartition& partition);

// Log of the matrix-parametrized multinomial analogue
//   Gamma_m(n + (m+1)/2) / prod_i Gamma_m(k_i + (m+1)/2) * prod_i |M_i|^(k_i),
// with the same singular-block conventions. Reduces to the classical
// multinomial PMF at m = 1.
double generalized_multinomial_logpmf(const MultinomialParams& params,
                                      const MatrixPartition& partition);

// Classical multinomial log-PMF via log-gamma factorials; independent m = 1
// reference. k has r entries, p has r+1 interior probabilities.
double multinomial_logpmf_reference(int n, const std::vector<int>& k,
                                    const std::vector<double>& p);

}  // namespace mvg
