#pragma once

#include <array>
#include <optional>
#include <vector>

#include "json.hpp"
#include "oracle.hpp"

namespace pqci::protocol {

using geometry::Circle;
using geometry::ProblemParams;

enum class Sign { Plus, Minus };
inline const char* sign_str(Sign s) { return s == Sign::Plus ? "+" : "-"; }

enum class Verdict {
    Intersect,
    Disjoint,
    AbortDishonestBob,
    AbortInconsistentResults,
    AbortEavesdropperDetected,
};
const char* verdict_str(Verdict v);

// Alice's query string X = x1 || y1 || r1 laid out over an m = 3n qubit
// particle: r1 in bits [0, n), y1 in [n, 2n), x1 in [2n, 3n), so x1 prints as
// the most significant field.
struct EncodedInput {
    RegValue x = 0, y = 0, r = 0;
    std::vector<std::size_t> j_list;  // nonzero bit positions, ascending
    std::size_t j1 = 0;               // first (lowest-index) nonzero bit
};

EncodedInput encode_input(const Circle& c, const ProblemParams& p);
Circle decode_input(const EncodedInput& e);

// --- Generic pair primitives --------------------------------------------------
// These work on any contiguous h/t register block of m qubits, so tests can
// exercise them on toy widths against the dense backend.

// |0...0> -> (|0> + |X>)/sqrt(2) on the m qubits at `base`: H on j1 then CNOT
// fanout to every other nonzero bit of X.
void prepare_superposition(SparseState& s, std::size_t base,
                           const std::vector<std::size_t>& j_list,
                           qarith::CostTally* cost = nullptr);

// CNOT^m with the qubits at `from_base` controlling those at `to_base`.
void cnot_fanout(SparseState& s, std::size_t from_base, std::size_t to_base,
                 std::size_t m, qarith::CostTally* cost = nullptr);

// Inverse preparation on the particle at `base` followed by a |+>/|->
// measurement of qubit j1.
Sign distinguish(SparseState& s, std::size_t base, const std::vector<std::size_t>& j_list,
                 Rng& rng, qarith::CostTally* cost = nullptr);

// --- Protocol runs -------------------------------------------------------------

// One (h_i, t_i) particle pair. Register groups are contiguous: t at bits
// [0, m), h at [m, 2m), and, when an adversary taps the channel, e at [2m, 3m).
struct PairRun {
    SparseState state;
    std::size_t m = 0;
    std::size_t t_base = 0;
    std::size_t h_base = 0;
    std::size_t e_base = 0;  // only when tapped
    bool tapped = false;
    EncodedInput enc;

    Register t_field(std::size_t i, std::size_t n) const {  // i=0:r 1:y 2:x
        return Register{t_base + i * n, n};
    }
    Register h_field(std::size_t i, std::size_t n) const {
        return Register{h_base + i * n, n};
    }
    Register e_field(std::size_t i, std::size_t n) const {
        return Register{e_base + i * n, n};
    }
};

// Hooks an attack strategy uses to interfere with a run. Honest runs pass
// nullptr everywhere.
struct Adversary {
    virtual ~Adversary() = default;
    // Bob-side taps get an extra m-qubit register per pair.
    virtual bool wants_tap() const { return false; }
    // A malicious Alice may feed a different circle into the second pair.
    virtual std::optional<Circle> second_input() const { return std::nullopt; }
    virtual bool skip_consistency() const { return false; }
    // Called while Bob holds t1, t2, before the oracle.
    virtual void on_bob_hold(std::array<PairRun, 2>&, const ProblemParams&, Rng&) {}
    // Called after the oracle, before the particles travel back.
    virtual void on_bob_return(std::array<PairRun, 2>&, const ProblemParams&, Rng&) {}
    // Called once Alice has announced; Bob measures whatever he kept.
    virtual void on_complete(std::array<PairRun, 2>&, const ProblemParams&,
                             const std::array<Sign, 2>&, Rng&) {}
};

struct Transcript {
    nlohmann::json stages = nlohmann::json::array();
    std::array<std::string, 2> honesty_h;  // measured h triples, "x,y,r" ("0,0,0" = pass)
    std::array<bool, 2> honesty_pass{};
    std::array<Sign, 2> signs{Sign::Plus, Sign::Plus};
    Verdict verdict = Verdict::Disjoint;
    bool aborted_at_honesty = false;
    std::uint64_t seed = 0;
    qarith::CostTally cost;
    std::size_t messages_to_bob = 0;    // quantum messages, m qubits each
    std::size_t messages_to_alice = 0;
    std::size_t qubits_per_message = 0;
    std::size_t max_terms = 0;  // largest term count seen in either pair state

    nlohmann::json to_json(const ProblemParams& p, const Circle& alice,
                           const Circle& bob) const;
};

struct RunResult {
    Transcript transcript;
    Verdict verdict = Verdict::Disjoint;
};

RunResult run_protocol(const Circle& alice, const Circle& bob, const ProblemParams& p,
                       std::uint64_t seed, Adversary* adversary = nullptr,
                       bool capture_states = false);

}  // namespace pqci::protocol
