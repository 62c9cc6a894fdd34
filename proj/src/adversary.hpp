#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "protocol.hpp"

namespace pqci::adversary {

using geometry::Circle;
using geometry::ProblemParams;
using protocol::Sign;

enum class Strategy {
    BobDirectMeasureOne,
    BobDirectMeasureBoth,
    BobInterceptResend,
    BobEntangleMeasure,
    AliceMultiInput,
    AliceSuperposed,
    EveInterceptForward,
};

Strategy parse_strategy(const std::string& name);
const char* strategy_name(Strategy s);

// Monte Carlo aggregates over independent trials.
struct AttackStats {
    std::uint64_t trials = 0;
    std::uint64_t learned_x = 0;            // attacker's record determines X
    std::uint64_t detected = 0;             // run aborted because of the attack
    std::uint64_t learned_and_concealed = 0;
    std::uint64_t honesty_pass = 0;         // runs passing the honesty test
    std::uint64_t sign_plus = 0;            // Alice's discrimination outcomes
    std::uint64_t sign_minus = 0;

    double rate(std::uint64_t count) const {
        return trials ? double(count) / double(trials) : 0.0;
    }
    static double ci95(double p, std::uint64_t n);
    nlohmann::json to_json() const;
};

// Runs the Bob-side and Eve strategies. Trials are independently seeded from
// `seed`; `decoys` only applies to EveInterceptForward.
AttackStats run_attack_trials(Strategy strategy, const Circle& alice, const Circle& bob,
                              const ProblemParams& p, std::uint64_t trials,
                              std::uint64_t seed, unsigned decoys = 8);

// Alice feeds two different circles into the two pairs and skips her own
// consistency check, getting both predicate evaluations from one run.
std::pair<Sign, Sign> alice_multi_input(const Circle& first, const Circle& second,
                                        const Circle& bob, const ProblemParams& p,
                                        std::uint64_t seed);

// Alice queries with the uniform superposition over all 2^m labels; the
// returned state is measured in the Hadamard-transformed basis. Restricted to
// t <= 2 (dense 2^m-amplitude evaluation).
struct SuperposedResult {
    std::size_t m = 0;
    std::size_t marked_count = 0;     // labels with phase -1
    double p_zero = 0.0;              // probability of the all-zeros outcome
    std::uint64_t sampled_outcome = 0;
    std::vector<std::pair<std::uint64_t, double>> top;  // highest-probability outcomes

    nlohmann::json to_json() const;
};

SuperposedResult alice_superposed(const Circle& bob, const ProblemParams& p,
                                  std::uint64_t seed);

// Same evaluation with an arbitrary diagonal +-1 oracle; lets tests drive the
// identity operator and hand-built markings.
SuperposedResult superposed_query(std::size_t m,
                                  const std::function<int(std::uint64_t)>& phase,
                                  std::uint64_t seed);

// External Eve measures every qubit in flight in the computational basis;
// Alice checks d decoy qubits drawn from {|0>,|1>,|+>,|->}. With no Eve the
// decoys pass untouched.
AttackStats eve_intercept(unsigned decoys, bool eve_present, std::uint64_t trials,
                          std::uint64_t seed);

}  // namespace pqci::adversary
