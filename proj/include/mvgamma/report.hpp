#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "json.hpp"

namespace mvg {

// Result of one verification run: how many checks ran, how many violated
// their tolerance, the smallest margin seen (negative = violation), and how
// many checks landed in the near-zero diagnostic band. config carries the
// claim-specific parameters (tolerances, ranges, per-order margins, ...).
struct VerificationReport {
    std::string claim;
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::uint64_t near_zero_count = 0;
    std::uint64_t seed = 0;
    nlohmann::json config = nlohmann::json::object();

    bool passed() const noexcept { return violations == 0; }

    // One check with the given margin; margin < -tolerance is a violation.
    void record(double margin, double tolerance, bool near_zero = false);

    // Serialization; the timestamp is the only non-deterministic field.
    nlohmann::json to_json(bool with_timestamp = true) const;
};

}  // namespace mvg
