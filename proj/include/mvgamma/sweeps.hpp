#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvgamma/monotonicity.hpp"

namespace mvg {

enum class Claim {
    Lemma,        // J > 0 over random (beta, y, u)
    Lcm,          // sign pattern of (ln Q)^(k) over random instances
    Thm2,         // the three ln R inequalities plus equality diagnostics
    Minkowski,    // |A+B|^(1/m) >= |A|^(1/m) + |B|^(1/m) on random PSD pairs
    Limit,        // -(ln Q)'(x) -> closed-form limit, limit >= 0
    HConvexity,   // convexity and boundary behavior of H
    Phi,          // super-additivity and star-shapedness of phi
    G,            // g(s) < g(1) for s > 1
    M1Reduction,  // m = 1 PMF equals the classical multinomial, sums to 1
};

const char* claim_name(Claim claim);
std::optional<Claim> claim_from_name(std::string_view name);
std::vector<std::string> all_claim_names();

struct SweepConfig {
    Claim claim = Claim::Lemma;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    int max_order = 8;                         // lcm only
    int workers = 0;                           // 0 = hardware default
    std::map<std::string, double> tolerances;  // name -> override
    std::optional<QInstance> instance;         // pin the instance (lcm, thm2, limit)
    std::string out_path;                      // consumed by the CLI layer
};

// Runs the named sweep. Reports are byte-identical for equal (claim, trials,
// seed, tolerances) regardless of worker count: every trial draws from its
// own derived stream and results merge in trial order.
VerificationReport run_sweep(const SweepConfig& config);

// Random Q instance: m ~ U{1..max_m}, r ~ U{1..max_r}, n ~ U{1..max_n},
// alpha = n * (interior simplex point), partition from sample_partition.
QInstance random_instance(RngStream& rng, int max_m = 4, int max_r = 4, int max_n = 6);

}  // namespace mvg
