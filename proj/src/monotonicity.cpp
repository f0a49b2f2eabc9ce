#include "mvgamma/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mvgamma/multivariate_gamma.hpp"

namespace mvg {
namespace {

// ln(e^a - 1) without overflow for a > 0.
double ln_expm1(double a) {
    if (a > 1.0) return a + std::log1p(-std::exp(-a));
    return std::log(std::expm1(a));
}

// 1 / (y^(beta/u) (y^(1/u) - 1)) with log_y = ln y; underflows to exact 0.
double power_term(double log_y, double beta, double u) {
    const double a = log_y / u;
    return std::exp(-beta * a - ln_expm1(a));
}

void require_y_above_one(const char* fn, double y) {
    if (!(y > 1.0) || !std::isfinite(y))
        throw std::domain_error(std::string(fn) + ": y must exceed 1, got " + std::to_string(y));
}

void require_beta(const char* fn, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::domain_error(std::string(fn) + ": beta must be >= 0, got " +
                                std::to_string(beta));
}

}  // namespace

LemmaArgs::LemmaArgs(double beta_, SimplexPoint u_, double y_)
    : beta(beta_), u(std::move(u_)), y(y_) {
    require_beta("LemmaArgs", beta);
    if (!(y >= kMinY) || !std::isfinite(y))
        throw std::domain_error("LemmaArgs: y must be >= 1 + 1e-6, got " + std::to_string(y));
}

double lemma_J(const LemmaArgs& args) {
    const double log_y = std::log(args.y);
    double value = power_term(log_y, args.beta, 1.0);
    for (int i = 0; i <= args.u.count(); ++i)
        value -= power_term(log_y, args.beta, args.u.full_coord(i));
    return value;
}

double proof_H(double y, double beta, double u) {
    require_y_above_one("proof_H", y);
    require_beta("proof_H", beta);
    if (!(u > 0.0)) throw std::domain_error("proof_H: u must be positive");
    return power_term(std::log(y), beta, u);
}

double proof_phi(double y, double beta, double u) {
    require_y_above_one("proof_phi", y);
    require_beta("proof_phi", beta);
    if (u < 0.0) throw std::domain_error("proof_phi: u must be >= 0");
    return u == 0.0 ? 0.0 : power_term(std::log(y), beta, u);
}

SuperAdditivityCheck proof_phi_superadditive(double y, double beta, double u1, double u2) {
    SuperAdditivityCheck check;
    check.lhs = proof_phi(y, beta, u1) + proof_phi(y, beta, u2);
    check.rhs = proof_phi(y, beta, u1 + u2);
    check.holds = check.lhs <= check.rhs + 1e-12;
    return check;
}

double proof_g(double s, double y, double beta) {
    require_y_above_one("proof_g", y);
    require_beta("proof_g", beta);
    if (!(s >= 1.0)) throw std::domain_error("proof_g: s must be >= 1");
    return s * power_term(std::log(y), beta, 1.0 / s);
}

QInstance::QInstance(int n, std::vector<double> alpha, MatrixPartition partition)
    : n_(n), alpha_(std::move(alpha)), alpha_last_(0.0), partition_(std::move(partition)) {
    if (n_ < 1) throw std::domain_error("QInstance: n must be >= 1");
    if (static_cast<int>(alpha_.size()) != partition_.parts_count())
        throw std::invalid_argument("QInstance: alpha size must match the partition part count");
    double sum = 0.0;
    for (double a : alpha_) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::domain_error("QInstance: every alpha_i must be positive");
        sum += a;
    }
    alpha_last_ = n_ - sum;
    if (!(alpha_last_ > 0.0))
        throw std::domain_error("QInstance: alpha must satisfy sum(alpha) < n");
    logdets_.reserve(static_cast<std::size_t>(r()) + 1);
    for (int i = 0; i <= r(); ++i) {
        try {
            logdets_.push_back(logdet_pd(partition_.block(i)));
        } catch (const NotPositiveDefiniteError&) {
            throw std::domain_error("QInstance: block " + std::to_string(i) +
                                    " must be positive definite (Q needs finite ln|M_i|)");
        }
    }
}

double ln_Q(const QInstance& inst, double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_Q: x must be positive");
    const double c = 0.5 * (inst.m() + 1);
    double value = ln_gamma_m(inst.m(), x * inst.n() + c);
    for (int i = 0; i <= inst.r(); ++i) {
        value -= ln_gamma_m(inst.m(), x * inst.alpha(i) + c);
        value += x * inst.alpha(i) * inst.logdet(i);
    }
    return value;
}

double ln_Q_derivative(const QInstance& inst, double x, int order) {
    if (!(x > 0.0)) throw std::domain_error("ln_Q_derivative: x must be positive");
    if (order < 1 || order > 10)
        throw std::domain_error("ln_Q_derivative: order must be in [1, 10], got " +
                                std::to_string(order));
    const double c = 0.5 * (inst.m() + 1);
    const PolyOrder k(order - 1);
    double value = std::pow(inst.n(), order) * psi_m(k, inst.m(), x * inst.n() + c);
    for (int i = 0; i <= inst.r(); ++i)
        value -= std::pow(inst.alpha(i), order) * psi_m(k, inst.m(), x * inst.alpha(i) + c);
    if (order == 1)
        for (int i = 0; i <= inst.r(); ++i) value += inst.alpha(i) * inst.logdet(i);
    return value;
}

double limit_neg_lnQ_prime(const QInstance& inst) {
    double value = 0.0;
    for (int i = 0; i <= inst.r(); ++i) {
        const double weight = inst.alpha(i) / inst.n();
        value += weight * (inst.logdet(i) / inst.m() - std::log(weight));
    }
    return -static_cast<double>(inst.m()) * inst.n() * value;
}

double ln_R(const QInstance& inst, double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_R: x must be positive");
    const double c = 0.5 * (inst.m() + 1);
    double value = ln_gamma_m(inst.m(), x * inst.n() + c);
    for (int i = 0; i <= inst.r(); ++i) value -= ln_gamma_m(inst.m(), x * inst.alpha(i) + c);
    return value;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi >= lo) || points < 1)
        throw std::invalid_argument("log_grid: need 0 < lo <= hi and points >= 1");
    std::vector<double> grid(static_cast<std::size_t>(points));
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    grid.back() = hi;
    return grid;
}

VerificationReport check_lcm(const QInstance& inst, const std::vector<double>& x_grid,
                             int max_order, double tolerance) {
    if (x_grid.empty()) throw std::invalid_argument("check_lcm: grid must be nonempty");
    if (max_order < 1 || max_order > 10)
        throw std::domain_error("check_lcm: max_order must be in [1, 10]");
    VerificationReport report;
    report.claim = "lcm";
    std::vector<double> per_order(static_cast<std::size_t>(max_order),
                                  std::numeric_limits<double>::infinity());
    for (double x : x_grid)
        for (int k = 1; k <= max_order; ++k) {
            const double derivative = ln_Q_derivative(inst, x, k);
            const double margin = (k % 2 == 1) ? -derivative : derivative;
            per_order[static_cast<std::size_t>(k - 1)] =
                std::min(per_order[static_cast<std::size_t>(k - 1)], margin);
            report.record(margin, tolerance);
        }
    report.config = {{"tolerance", tolerance},
                     {"max_order", max_order},
                     {"grid_points", x_grid.size()},
                     {"grid_lo", x_grid.front()},
                     {"grid_hi", x_grid.back()},
                     {"per_order_worst", per_order}};
    return report;
}

VerificationReport check_thm2(const QInstance& inst, const std::vector<double>& xs,
                              const std::optional<std::vector<double>>& weights, double slack,
                              double eq_band) {
    if (xs.empty()) throw std::invalid_argument("check_thm2: xs must be nonempty");
    for (double x : xs)
        if (!(x > 0.0)) throw std::domain_error("check_thm2: every x must be positive");
    std::vector<double> lambda;
    if (weights) {
        lambda = *weights;
        if (lambda.size() != xs.size())
            throw std::invalid_argument("check_thm2: weights must match xs in length");
        double sum = 0.0;
        for (double w : lambda) {
            if (!(w > 0.0)) throw std::domain_error("check_thm2: weights must be positive");
            sum += w;
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            throw std::domain_error("check_thm2: weights must sum to 1");
    } else {
        lambda.assign(xs.size(), 1.0 / static_cast<double>(xs.size()));
    }

    VerificationReport report;
    report.claim = "thm2";
    bool eq1 = false;
    bool eq3 = false;

    // (1) Jensen-type convexity of ln R.
    {
        double mix = 0.0;
        double weighted = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mix += lambda[i] * xs[i];
            weighted += lambda[i] * ln_R(inst, xs[i]);
        }
        const double margin = weighted - ln_R(inst, mix);
        eq1 = std::fabs(margin) < eq_band;
        report.record(margin, slack, eq1);
    }

    // (2) Super-multiplicativity; needs two or more points.
    if (xs.size() >= 2) {
        double total = 0.0;
        double sum_log = 0.0;
        for (double x : xs) {
            total += x;
            sum_log += ln_R(inst, x);
        }
        const double margin = ln_R(inst, total) - sum_log;
        report.record(margin, slack, std::fabs(margin) < eq_band);
    }

    // (3) Three-factor rearrangement on the first three points, x1 <= x3.
    if (xs.size() >= 3) {
        double x1 = xs[0];
        const double x2 = xs[1];
        double x3 = xs[2];
        if (x1 > x3) std::swap(x1, x3);
        const double margin =
            (ln_R(inst, x1) + ln_R(inst, x2 + x3)) - (ln_R(inst, x1 + x2) + ln_R(inst, x3));
        eq3 = std::fabs(margin) < eq_band;
        report.record(margin, slack, eq3);
    }

    report.config = {{"slack", slack},
                     {"eq_band", eq_band},
                     {"eq1_fired", eq1},
                     {"eq3_fired", eq3},
                     {"points", xs.size()}};
    return report;
}

VerificationReport check_H_convexity(double y, double beta, const std::vector<double>& u_grid,
                                     double rel_tolerance) {
    require_y_above_one("check_H_convexity", y);
    require_beta("check_H_convexity", beta);
    VerificationReport report;
    report.claim = "h-convexity";
    const double h_at_one = proof_H(y, beta, 1.0);

    for (double u : u_grid) {
        if (!(u > 0.0) || !(u < 1.0))
            throw std::domain_error("check_H_convexity: grid points must lie in (0, 1)");
        // Convexity gives a positive second difference for any step, so a
        // wide stencil is used; margins are relative to the local scale.
        const double h = 0.45 * std::min(u, 1.0 - u);
        const double lo = proof_H(y, beta, u - h);
        const double mid = proof_H(y, beta, u);
        const double hi = proof_H(y, beta, u + h);
        const double scale = std::max({lo, mid, hi, 1e-300});
        const double margin = (lo + hi - 2.0 * mid) / scale;
        report.record(margin, rel_tolerance, scale <= 1e-300);

        // Chord bound behind the r = 1 lemma case.
        const double chord = (h_at_one - mid - proof_H(y, beta, 1.0 - u)) / h_at_one;
        report.record(chord, rel_tolerance, std::fabs(chord) < 1e-12);
    }

    // Boundary behavior: H vanishes as u -> 0+ and matches the direct
    // formula at u = 1.
    report.record(1e-12 - proof_H(y, beta, 1e-6) / h_at_one, 0.0);
    const double direct = 1.0 / (std::pow(y, beta) * (y - 1.0));
    if (direct > 0.0 && std::isfinite(direct))
        report.record(1e-12 - std::fabs(h_at_one - direct) / direct, 0.0);

    report.config = {{"rel_tolerance", rel_tolerance},
                     {"y", y},
                     {"beta", beta},
                     {"grid_points", u_grid.size()}};
    return report;
}

}  // namespace mvg
