#include "mvgamma/sweeps.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <mutex>
#include <thread>

#include "mvgamma/distributions.hpp"

namespace mvg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ClaimEntry {
    Claim claim;
    const char* name;
};
constexpr ClaimEntry kClaims[] = {
    {Claim::Lemma, "lemma"},         {Claim::Lcm, "lcm"},
    {Claim::Thm2, "thm2"},           {Claim::Minkowski, "minkowski"},
    {Claim::Limit, "limit"},         {Claim::HConvexity, "h-convexity"},
    {Claim::Phi, "phi"},             {Claim::G, "g"},
    {Claim::M1Reduction, "m1-reduction"},
};

double tolerance_or(const SweepConfig& config, const char* name, double fallback) {
    const auto it = config.tolerances.find(name);
    return it == config.tolerances.end() ? fallback : it->second;
}

// Per-trial accumulator; merged in trial order so reports never depend on
// thread scheduling or worker count.
struct TrialStats {
    double worst_margin = kInf;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::uint64_t near_zero = 0;
    std::array<double, 10> per_order{};
    std::uint64_t eq_expected = 0;
    std::uint64_t eq_fired = 0;
    std::uint64_t eq_false = 0;

    TrialStats() { per_order.fill(kInf); }

    void record(double margin, double tol, bool near = false) {
        ++checks;
        worst_margin = std::min(worst_margin, margin);
        if (margin < -tol) ++violations;
        if (near) ++near_zero;
    }

    void absorb(const TrialStats& other) {
        worst_margin = std::min(worst_margin, other.worst_margin);
        checks += other.checks;
        violations += other.violations;
        near_zero += other.near_zero;
        for (std::size_t i = 0; i < per_order.size(); ++i)
            per_order[i] = std::min(per_order[i], other.per_order[i]);
        eq_expected += other.eq_expected;
        eq_fired += other.eq_fired;
        eq_false += other.eq_false;
    }

    void absorb_report(const VerificationReport& report) {
        worst_margin = std::min(worst_margin, report.worst_margin);
        checks += report.trials;
        violations += report.violations;
        near_zero += report.near_zero_count;
    }
};

template <typename Fn>
TrialStats run_trials(std::uint64_t trials, int workers, const Fn& fn) {
    if (workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = static_cast<int>(std::clamp(hw, 1u, 8u));
    }
    workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), trials));
    std::vector<TrialStats> slots(trials);
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < trials; ++i) fn(i, slots[i]);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto body = [&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= trials) return;
                try {
                    fn(i, slots[i]);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    TrialStats total;
    for (const auto& slot : slots) total.absorb(slot);
    return total;
}

// Random PSD matrix for the Minkowski sweep: usually full rank G G^T, with
// occasional rank-deficient and zero matrices to hit the boundary.
SymMatrix random_psd(int m, RngStream& rng) {
    const double pick = rng.uniform();
    if (pick < 0.05) return SymMatrix(m);
    int cols = m;
    if (pick < 0.20 && m > 1) cols = m - 1;
    const double scale = rng.log_uniform(0.25, 4.0);
    std::vector<double> g(static_cast<std::size_t>(m) * static_cast<std::size_t>(cols));
    for (double& v : g) v = scale * rng.normal();
    SymMatrix a(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double acc = 0.0;
            for (int k = 0; k < cols; ++k)
                acc += g[static_cast<std::size_t>(i) * cols + k] *
                       g[static_cast<std::size_t>(j) * cols + k];
            a.set(i, j, acc);
        }
    return a;
}

void enumerate_counts(int slots, int budget, std::vector<int>& k,
                      const std::function<void(const std::vector<int>&)>& visit) {
    if (slots == 0) {
        visit(k);
        return;
    }
    for (int value = 0; value <= budget; ++value) {
        k.push_back(value);
        enumerate_counts(slots - 1, budget - value, k, visit);
        k.pop_back();
    }
}

VerificationReport finalize(const SweepConfig& config, const TrialStats& stats,
                            nlohmann::json claim_config) {
    VerificationReport report;
    report.claim = claim_name(config.claim);
    report.trials = config.trials;
    report.violations = stats.violations;
    report.worst_margin = stats.worst_margin;
    report.near_zero_count = stats.near_zero;
    report.seed = config.seed;
    claim_config["checks"] = stats.checks;
    report.config = std::move(claim_config);
    return report;
}

VerificationReport sweep_lemma(const SweepConfig& config) {
    const double tol = tolerance_or(config, "violation", 1e-12);
    const double near_rel = tolerance_or(config, "near_zero_rel", 1e-9);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const double beta = rng.uniform(0.0, 10.0);
        const double y = rng.log_uniform(1.001, 1000.0);
        const int r = rng.uniform_int(1, 6);
        const SimplexPoint u = sample_simplex_interior(r, rng);
        const double value = lemma_J(LemmaArgs(beta, u, y));
        // Cancellation guard is relative to the leading positive term; the
        // absolute scale of J varies over dozens of orders of magnitude.
        const double leading = proof_H(y, beta, 1.0);
        s.record(value, tol, value < near_rel * leading);
    });
    return finalize(config, stats,
                    {{"tolerance", tol},
                     {"near_zero_rel", near_rel},
                     {"beta_range", {0.0, 10.0}},
                     {"y_range", {1.001, 1000.0}},
                     {"r_range", {1, 6}},
                     {"interior_floor", 1e-3}});
}

VerificationReport sweep_lcm(const SweepConfig& config) {
    const double tol = tolerance_or(config, "violation", 1e-9);
    const std::vector<double> grid = log_grid(0.05, 50.0, 64);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const QInstance inst = config.instance ? *config.instance : random_instance(rng);
        const VerificationReport report = check_lcm(inst, grid, config.max_order, tol);
        s.absorb_report(report);
        const auto& per_order = report.config.at("per_order_worst");
        for (std::size_t k = 0; k < per_order.size(); ++k)
            s.per_order[k] = std::min(s.per_order[k], per_order[k].get<double>());
    });
    std::vector<double> per_order(stats.per_order.begin(),
                                  stats.per_order.begin() + config.max_order);
    return finalize(config, stats,
                    {{"tolerance", tol},
                     {"max_order", config.max_order},
                     {"grid", {{"lo", 0.05}, {"hi", 50.0}, {"points", 64}}},
                     {"instance_pool",
                      config.instance ? nlohmann::json("pinned")
                                      : nlohmann::json{{"max_m", 4}, {"max_r", 4}, {"max_n", 6}}},
                     {"per_order_worst", per_order}});
}

VerificationReport sweep_thm2(const SweepConfig& config) {
    const double slack = tolerance_or(config, "slack", 1e-10);
    const double eq_band = tolerance_or(config, "eq_band", 1e-12);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const QInstance inst = config.instance ? *config.instance : random_instance(rng);

        // Separated draws: the equality band must not fire here.
        std::vector<double> xs(3);
        for (;;) {
            for (double& x : xs) x = rng.uniform(0.05, 5.0);
            if (xs[0] > xs[2]) std::swap(xs[0], xs[2]);
            const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
            if (*hi - *lo >= 0.01 && xs[2] - xs[0] >= 0.01) break;
        }
        std::vector<double> lambda(3);
        double lambda_sum = 0.0;
        for (double& w : lambda) {
            w = rng.exponential();
            lambda_sum += w;
        }
        for (double& w : lambda) w /= lambda_sum;
        const VerificationReport random_case = check_thm2(inst, xs, lambda, slack, eq_band);
        s.absorb_report(random_case);
        if (random_case.config.at("eq1_fired").get<bool>()) ++s.eq_false;
        if (random_case.config.at("eq3_fired").get<bool>()) ++s.eq_false;

        // Constructed equality case: dyadic weights keep the mix exact, so
        // both diagnostics must fire.
        const double x = rng.uniform(0.05, 5.0);
        const std::vector<double> equal_xs{x, x, x};
        const std::vector<double> dyadic{0.25, 0.25, 0.5};
        const VerificationReport equal_case = check_thm2(inst, equal_xs, dyadic, slack, eq_band);
        s.absorb_report(equal_case);
        s.eq_expected += 2;
        if (equal_case.config.at("eq1_fired").get<bool>()) ++s.eq_fired;
        if (equal_case.config.at("eq3_fired").get<bool>()) ++s.eq_fired;
    });
    TrialStats adjusted = stats;
    adjusted.violations += stats.eq_false + (stats.eq_expected - stats.eq_fired);
    return finalize(config, adjusted,
                    {{"slack", slack},
                     {"eq_band", eq_band},
                     {"x_range", {0.05, 5.0}},
                     {"eq_expected", stats.eq_expected},
                     {"eq_fired", stats.eq_fired},
                     {"eq_false", stats.eq_false},
                     {"instance_pool",
                      config.instance ? nlohmann::json("pinned")
                                      : nlohmann::json{{"max_m", 4}, {"max_r", 4}, {"max_n", 6}}}});
}

VerificationReport sweep_minkowski(const SweepConfig& config) {
    const double slack = tolerance_or(config, "violation", 1e-10);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const int m = rng.uniform_int(1, 5);
        const SymMatrix a = random_psd(m, rng);
        const SymMatrix b = random_psd(m, rng);
        const MinkowskiCheck check = minkowski_det_check(a, b);
        const double margin = check.lhs - check.rhs;
        s.record(margin, slack, std::fabs(margin) < 1e-12);
    });
    return finalize(config, stats, {{"tolerance", slack}, {"m_range", {1, 5}}});
}

VerificationReport sweep_limit(const SweepConfig& config) {
    const double limit_tol = tolerance_or(config, "limit_nonneg", 1e-12);
    const double agreement = tolerance_or(config, "agreement", 1e-2);
    const double monotone_slack = tolerance_or(config, "monotone_slack", 1e-10);
    const std::array<double, 3> probes{1e2, 1e3, 1e4};
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const QInstance inst = config.instance ? *config.instance : random_instance(rng);
        const double limit = limit_neg_lnQ_prime(inst);
        s.record(limit, limit_tol);
        std::array<double, 3> errors{};
        for (std::size_t p = 0; p < probes.size(); ++p)
            errors[p] = std::fabs(-ln_Q_derivative(inst, probes[p], 1) - limit);
        s.record(agreement - errors.back(), 0.0);
        // -(ln Q)' decreases to the limit, so the error shrinks with x.
        s.record(errors[0] - errors[1], monotone_slack);
        s.record(errors[1] - errors[2], monotone_slack);
    });
    return finalize(config, stats,
                    {{"limit_nonneg", limit_tol},
                     {"agreement", agreement},
                     {"monotone_slack", monotone_slack},
                     {"x_probes", probes}});
}

VerificationReport sweep_h_convexity(const SweepConfig& config) {
    const double rel_tol = tolerance_or(config, "violation", 1e-12);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const double y = rng.log_uniform(1.001, 1000.0);
        const double beta = rng.uniform(0.0, 10.0);
        std::vector<double> grid(8);
        for (double& u : grid) u = rng.uniform(0.02, 0.98);
        s.absorb_report(check_H_convexity(y, beta, grid, rel_tol));
    });
    return finalize(config, stats,
                    {{"rel_tolerance", rel_tol},
                     {"beta_range", {0.0, 10.0}},
                     {"y_range", {1.001, 1000.0}},
                     {"grid_points_per_trial", 8}});
}

VerificationReport sweep_phi(const SweepConfig& config) {
    const double tol = tolerance_or(config, "violation", 1e-12);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const double y = rng.log_uniform(1.001, 1000.0);
        const double beta = rng.uniform(0.0, 10.0);
        const double u1 = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 2.0);
        const double u2 = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 2.0);
        const SuperAdditivityCheck check = proof_phi_superadditive(y, beta, u1, u2);
        s.record(check.rhs - check.lhs, tol, std::fabs(check.rhs - check.lhs) < 1e-15);

        const double nu = rng.uniform();
        const double t = rng.uniform(0.0, 2.0);
        const double star = nu * proof_phi(y, beta, t) - proof_phi(y, beta, nu * t);
        s.record(star, tol, std::fabs(star) < 1e-15);
    });
    return finalize(config, stats,
                    {{"tolerance", tol},
                     {"beta_range", {0.0, 10.0}},
                     {"y_range", {1.001, 1000.0}},
                     {"u_range", {0.0, 2.0}}});
}

VerificationReport sweep_g(const SweepConfig& config) {
    const double tol = tolerance_or(config, "violation", 1e-12);
    const double near_rel = tolerance_or(config, "near_zero_rel", 1e-9);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const double y = rng.log_uniform(1.001, 1000.0);
        const double beta = rng.uniform(0.0, 10.0);
        const double s_arg = rng.log_uniform(1.001, 100.0);
        const double at_one = proof_g(1.0, y, beta);
        const double margin = at_one - proof_g(s_arg, y, beta);
        s.record(margin, tol, margin < near_rel * at_one);
    });
    return finalize(config, stats,
                    {{"tolerance", tol},
                     {"near_zero_rel", near_rel},
                     {"s_range", {1.001, 100.0}},
                     {"beta_range", {0.0, 10.0}},
                     {"y_range", {1.001, 1000.0}}});
}

VerificationReport sweep_m1_reduction(const SweepConfig& config) {
    const double rel_tol = tolerance_or(config, "rel_tolerance", 1e-12);
    const double norm_tol = tolerance_or(config, "normalization", 1e-10);
    const auto stats = run_trials(config.trials, config.workers, [&](std::uint64_t i, TrialStats& s) {
        RngStream rng(config.seed, i);
        const int r = rng.uniform_int(1, 3);
        const int n = rng.uniform_int(1, 6);
        const SimplexPoint p = sample_simplex_interior(r, rng);
        std::vector<SymMatrix> parts;
        parts.reserve(static_cast<std::size_t>(r));
        for (int j = 0; j < r; ++j)
            parts.push_back(SymMatrix::from_rows({{p.coord(j)}}));
        const MatrixPartition partition{std::move(parts)};
        std::vector<double> probs(static_cast<std::size_t>(r) + 1);
        for (int j = 0; j < r; ++j) probs[static_cast<std::size_t>(j)] = p.coord(j);
        probs.back() = partition.complement()(0, 0);

        double total = 0.0;
        std::vector<int> k;
        enumerate_counts(r, n, k, [&](const std::vector<int>& counts) {
            const MultinomialParams params(1, n, counts);
            const double general = generalized_multinomial_logpmf(params, partition);
            const double reference = multinomial_logpmf_reference(n, counts, probs);
            const double rel_err = std::fabs(general - reference) / std::max(1.0, std::fabs(reference));
            s.record(rel_tol - rel_err, 0.0);
            total += std::exp(general);
        });
        s.record(norm_tol - std::fabs(total - 1.0), 0.0);
    });
    return finalize(config, stats,
                    {{"rel_tolerance", rel_tol},
                     {"normalization", norm_tol},
                     {"max_r", 3},
                     {"max_n", 6}});
}

}  // namespace

const char* claim_name(Claim claim) {
    for (const auto& entry : kClaims)
        if (entry.claim == claim) return entry.name;
    return "unknown";
}

std::optional<Claim> claim_from_name(std::string_view name) {
    for (const auto& entry : kClaims)
        if (name == entry.name) return entry.claim;
    return std::nullopt;
}

std::vector<std::string> all_claim_names() {
    std::vector<std::string> names;
    names.reserve(std::size(kClaims));
    for (const auto& entry : kClaims) names.emplace_back(entry.name);
    return names;
}

QInstance random_instance(RngStream& rng, int max_m, int max_r, int max_n) {
    const int m = rng.uniform_int(1, max_m);
    const int r = rng.uniform_int(1, max_r);
    const int n = rng.uniform_int(1, max_n);
    const SimplexPoint u = sample_simplex_interior(r, rng);
    std::vector<double> alpha(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) alpha[static_cast<std::size_t>(i)] = n * u.coord(i);
    return QInstance(n, std::move(alpha), sample_partition(m, r, rng));
}

VerificationReport run_sweep(const SweepConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    if (config.instance && config.claim != Claim::Lcm && config.claim != Claim::Thm2 &&
        config.claim != Claim::Limit)
        throw std::invalid_argument("run_sweep: only lcm, thm2, and limit accept a pinned instance");
    switch (config.claim) {
        case Claim::Lemma: return sweep_lemma(config);
        case Claim::Lcm: return sweep_lcm(config);
        case Claim::Thm2: return sweep_thm2(config);
        case Claim::Minkowski: return sweep_minkowski(config);
        case Claim::Limit: return sweep_limit(config);
        case Claim::HConvexity: return sweep_h_convexity(config);
        case Claim::Phi: return sweep_phi(config);
        case Claim::G: return sweep_g(config);
        case Claim::M1Reduction: return sweep_m1_reduction(config);
    }
    throw std::logic_error("run_sweep: unhandled claim");
}

}  // namespace mvg
