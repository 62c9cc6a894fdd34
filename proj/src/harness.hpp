#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adversary.hpp"
#include "json.hpp"

namespace pqci::harness {

inline constexpr const char* kVersion = "1.0.0";

// All commands return a full report: config echo, results, version, timing.
// Everything under "results" is reproducible bit-for-bit from the embedded
// config and seed; "timing_ms" is the only field that varies between runs.

nlohmann::json cmd_decide(unsigned t, const geometry::Circle& alice,
                          const geometry::Circle& bob, std::uint64_t seed);

// samples == 0 requests the exhaustive sweep (t <= 3); otherwise `samples`
// random pairs are drawn.
nlohmann::json cmd_verify(unsigned t, std::uint64_t samples, std::uint64_t seed);

nlohmann::json cmd_attack(const std::string& strategy, unsigned t,
                          const geometry::Circle& alice, const geometry::Circle& bob,
                          const std::optional<geometry::Circle>& alice2,
                          std::uint64_t trials, unsigned decoys, std::uint64_t seed);

nlohmann::json cmd_cost(const std::vector<unsigned>& t_values);

nlohmann::json cmd_trace(unsigned t, const geometry::Circle& alice,
                         const geometry::Circle& bob, std::uint64_t seed);

// True when a report's results carry a failure the CLI should exit 1 on
// (verify mismatches, attack targets missed).
bool report_failed(const nlohmann::json& report);

}  // namespace pqci::harness
