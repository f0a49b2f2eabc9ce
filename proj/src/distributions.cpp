#include "mvgamma/distributions.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mvgamma/multivariate_gamma.hpp"

namespace mvg {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log|block| or -infinity for a singular (PSD, Cholesky-rejected) block.
double logdet_or_neg_inf(const SymMatrix& block) {
    try {
        return logdet_pd(block);
    } catch (const NotPositiveDefiniteError&) {
        return kNegInf;
    }
}

// exponent * log|block| under the 0 * ln 0 := 0 convention.
double weighted_logdet(double exponent, const SymMatrix& block) {
    if (exponent == 0.0) return 0.0;
    const double logdet = logdet_or_neg_inf(block);
    if (logdet == kNegInf && exponent < 0.0)
        throw std::domain_error(
            "weighted_logdet: singular block with negative exponent has no finite density");
    return exponent * logdet;  // -inf when singular with positive exponent
}

}  // namespace

DirichletParams::DirichletParams(int m_, std::vector<double> a_) : m(m_), a(std::move(a_)) {
    if (m < 1) throw std::domain_error("DirichletParams: m must be >= 1");
    if (a.size() < 2) throw std::domain_error("DirichletParams: need at least two parameters");
    const double bound = 0.5 * (m - 1);
    for (double value : a)
        if (!(value > 0.0) || !(value > bound))
            throw std::domain_error("DirichletParams: every a_i must exceed (m-1)/2 = " +
                                    std::to_string(bound));
}

MultinomialParams::MultinomialParams(int m_, int n_, std::vector<int> k_)
    : m(m_), n(n_), k(std::move(k_)) {
    if (m < 1) throw std::domain_error("MultinomialParams: m must be >= 1");
    if (n < 1) throw std::domain_error("MultinomialParams: n must be >= 1");
    if (k.empty()) throw std::domain_error("MultinomialParams: need at least one count");
    int sum = 0;
    for (int value : k) {
        if (value < 0) throw std::domain_error("MultinomialParams: counts must be non-negative");
        sum += value;
    }
    if (sum > n) throw std::domain_error("MultinomialParams: counts exceed n");
}

int MultinomialParams::k_last() const noexcept {
    return n - std::accumulate(k.begin(), k.end(), 0);
}

double matrix_dirichlet_logpdf(const DirichletParams& params, const MatrixPartition& partition) {
    if (params.m != partition.dim())
        throw std::invalid_argument("matrix_dirichlet_logpdf: dimension mismatch");
    if (params.r() != partition.parts_count())
        throw std::invalid_argument("matrix_dirichlet_logpdf: parameter/part count mismatch");
    const double half_m1 = 0.5 * (params.m + 1);
    double total_a = 0.0;
    for (double value : params.a) total_a += value;
    double result = ln_gamma_m(params.m, total_a);
    for (double value : params.a) result -= ln_gamma_m(params.m, value);
    for (int i = 0; i <= params.r(); ++i)
        result += weighted_logdet(params.a[static_cast<std::size_t>(i)] - half_m1,
                                  partition.block(i));
    return result;
}

double generalized_multinomial_logpmf(const MultinomialParams& params,
                                      const MatrixPartition& partition) {
    if (params.m != partition.dim())
        throw std::invalid_argument("generalized_multinomial_logpmf: dimension mismatch");
    if (params.r() != partition.parts_count())
        throw std::invalid_argument("generalized_multinomial_logpmf: count/part mismatch");
    const double half_m1 = 0.5 * (params.m + 1);
    double result = ln_gamma_m(params.m, params.n + half_m1);
    for (int i = 0; i < params.r(); ++i)
        result -= ln_gamma_m(params.m, params.k[static_cast<std::size_t>(i)] + half_m1);
    result -= ln_gamma_m(params.m, params.k_last() + half_m1);
    for (int i = 0; i < params.r(); ++i)
        result += weighted_logdet(params.k[static_cast<std::size_t>(i)], partition.part(i));
    result += weighted_logdet(params.k_last(), partition.complement());
    return result;
}

double multinomial_logpmf_reference(int n, const std::vector<int>& k,
                                    const std::vector<double>& p) {
    if (n < 1) throw std::domain_error("multinomial_logpmf_reference: n must be >= 1");
    if (p.size() != k.size() + 1)
        throw std::invalid_argument(
            "multinomial_logpmf_reference: need one more probability than counts");
    double psum = 0.0;
    for (double prob : p) {
        if (!(prob > 0.0)) throw std::domain_error("multinomial_logpmf_reference: p must be positive");
        psum += prob;
    }
    if (std::fabs(psum - 1.0) > 1e-9)
        throw std::domain_error("multinomial_logpmf_reference: probabilities must sum to 1");
    int ksum = 0;
    for (int count : k) {
        if (count < 0) throw std::domain_error("multinomial_logpmf_reference: negative count");
        ksum += count;
    }
    if (ksum > n) throw std::domain_error("multinomial_logpmf_reference: counts exceed n");
    const int k_last = n - ksum;
    double result = ln_gamma(n + 1.0);
    for (std::size_t i = 0; i < k.size(); ++i) {
        result -= ln_gamma(k[i] + 1.0);
        if (k[i] > 0) result += k[i] * std::log(p[i]);
    }
    result -= ln_gamma(k_last + 1.0);
    if (k_last > 0) result += k_last * std::log(p.back());
    return result;
}

}  // namespace mvg
