#pragma once

#include <optional>
#include <vector>

#include "mvgamma/matrix_core.hpp"
#include "mvgamma/report.hpp"

namespace mvg {

// Arguments of the lemma function J: beta >= 0, interior simplex point u,
// and y bounded away from the pole at 1 (J ~ 1/(y-1) there and the function
// is scale-covariant, so nothing is lost by the floor).
struct LemmaArgs {
    static constexpr double kMinY = 1.0 + 1e-6;

    LemmaArgs(double beta_, SimplexPoint u_, double y_);

    double beta;
    SimplexPoint u;
    double y;
};

// J(y) = 1/(y^beta (y-1)) - sum_{i=1}^{r+1} 1/(y^(beta/u_i) (y^(1/u_i) - 1)).
// Each term is evaluated in the log domain; terms whose exponents overflow
// underflow to exact 0, which only increases J (the terms are subtracted).
double lemma_J(const LemmaArgs& args);

// H(u) = 1/(y^(beta/u) (y^(1/u) - 1)) for y > 1, beta >= 0, u > 0; strictly
// convex in u with H(0+) = 0.
double proof_H(double y, double beta, double u);

// phi(u) = H(u) for u > 0 extended by phi(0) = 0; convex with phi(0) = 0,
// hence star-shaped and super-additive.
double proof_phi(double y, double beta, double u);

struct SuperAdditivityCheck {
    double lhs = 0.0;  // phi(u1) + phi(u2)
    double rhs = 0.0;  // phi(u1 + u2)
    bool holds = false;
};
SuperAdditivityCheck proof_phi_superadditive(double y, double beta, double u1, double u2);

// g(s) = s / (y^(s beta) (y^s - 1)); decreasing in s, so g(s) < g(1) for s > 1.
double proof_g(double s, double y, double beta);

// Parameter set of Q(x): dimension m (from the partition), trial count n,
// weights alpha in the open scaled simplex n*S_r (alpha_{r+1} = n - |alpha|
// implicit), a positive definite partition, and cached log-determinants.
class QInstance {
public:
    QInstance(int n, std::vector<double> alpha, MatrixPartition partition);

    int m() const noexcept { return partition_.dim(); }
    int n() const noexcept { return n_; }
    int r() const noexcept { return static_cast<int>(alpha_.size()); }

    // i in [0, r]; i == r yields the implicit alpha_{r+1} = n - |alpha|.
    double alpha(int i) const {
        return i == r() ? alpha_last_ : alpha_[static_cast<std::size_t>(i)];
    }

    // Cached ln|M_i|, i in [0, r] with i == r the complement.
    double logdet(int i) const { return logdets_[static_cast<std::size_t>(i)]; }

    const MatrixPartition& partition() const noexcept { return partition_; }

private:
    int n_;
    std::vector<double> alpha_;
    double alpha_last_;
    MatrixPartition partition_;
    std::vector<double> logdets_;
};

// ln Q(x) = ln Gamma_m(xn + (m+1)/2) - sum_i ln Gamma_m(x alpha_i + (m+1)/2)
//           + x sum_i alpha_i ln|M_i|.
double ln_Q(const QInstance& inst, double x);

// Exact k-th derivative of ln Q via the psi_m family, 1 <= k <= 10:
//   k = 1: n psi_m(xn + c) - sum alpha_i psi_m(x alpha_i + c) + sum alpha_i ln|M_i|
//   k >= 2: n^k psi_m^(k-1)(xn + c) - sum alpha_i^k psi_m^(k-1)(x alpha_i + c).
double ln_Q_derivative(const QInstance& inst, double x, int order);

// Closed form of lim_{x->inf} [-ln Q(x)]':
//   -m n sum_i (alpha_i/n) ln(|M_i|^(1/m) / (alpha_i/n)),
// nonnegative by Jensen plus the Minkowski determinant inequality.
double limit_neg_lnQ_prime(const QInstance& inst);

// ln R(x) = ln Q(x) - x sum_i alpha_i ln|M_i|, the Gamma_m-ratio factor.
double ln_R(const QInstance& inst, double x);

// Geometric grid with `points` entries from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int points);

// Sign pattern (-1)^k (ln Q)^(k)(x) >= -tolerance over a grid for orders
// 1..max_order. Worst margins per order end up in config["per_order_worst"].
VerificationReport check_lcm(const QInstance& inst, const std::vector<double>& x_grid,
                             int max_order, double tolerance = 1e-9);

// The three ratio inequalities in the log domain, with an equality diagnostic
// band: (1) ln R(sum lambda_k x_k) <= sum lambda_k ln R(x_k), equality iff all
// x equal; (2) sum ln R(x_k) < ln R(sum x_k) for two or more points; (3) for
// x1 <= x3, ln R(x1+x2) + ln R(x3) <= ln R(x1) + ln R(x2+x3), equality iff
// x1 = x3. Margins within eq_band count as near-zero and set the config
// equality flags.
VerificationReport check_thm2(const QInstance& inst, const std::vector<double>& xs,
                              const std::optional<std::vector<double>>& weights = std::nullopt,
                              double slack = 1e-10, double eq_band = 1e-12);

// Convexity of H on the given interior grid (second centered differences,
// relative to the local scale), the chord bound H(u) + H(1-u) < H(1), and the
// boundary behavior H(0+) = 0, H(1) = 1/(y^beta (y-1)).
VerificationReport check_H_convexity(double y, double beta, const std::vector<double>& u_grid,
                                     double rel_tolerance = 1e-12);

}  // namespace mvg
