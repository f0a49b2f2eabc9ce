#include "mvgamma/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

namespace mvg {

void VerificationReport::record(double margin, double tolerance, bool near_zero) {
    ++trials;
    worst_margin = std::min(worst_margin, margin);
    if (margin < -tolerance) ++violations;
    if (near_zero) ++near_zero_count;
}

nlohmann::json VerificationReport::to_json(bool with_timestamp) const {
    nlohmann::json out{
        {"claim", claim},
        {"trials", trials},
        {"violations", violations},
        {"worst_margin", worst_margin},
        {"near_zero_count", near_zero_count},
        {"seed", seed},
        {"config", config},
    };
    if (with_timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        char buffer[32];
        std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
        out["timestamp"] = buffer;
    }
    return out;
}

}  // namespace mvg
