#include "adversary.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace pqci::adversary {

using protocol::PairRun;
using protocol::Verdict;

Strategy parse_strategy(const std::string& name) {
    if (name == "bob-direct-one") return Strategy::BobDirectMeasureOne;
    if (name == "bob-direct-both") return Strategy::BobDirectMeasureBoth;
    if (name == "bob-intercept-resend") return Strategy::BobInterceptResend;
    if (name == "bob-entangle-measure") return Strategy::BobEntangleMeasure;
    if (name == "alice-multi-input") return Strategy::AliceMultiInput;
    if (name == "alice-superposed") return Strategy::AliceSuperposed;
    if (name == "eve-intercept") return Strategy::EveInterceptForward;
    throw Error("unknown strategy '" + name +
                "' (expected bob-direct-one|bob-direct-both|bob-intercept-resend|"
                "bob-entangle-measure|alice-multi-input|alice-superposed|eve-intercept)");
}

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::BobDirectMeasureOne: return "bob-direct-one";
        case Strategy::BobDirectMeasureBoth: return "bob-direct-both";
        case Strategy::BobInterceptResend: return "bob-intercept-resend";
        case Strategy::BobEntangleMeasure: return "bob-entangle-measure";
        case Strategy::AliceMultiInput: return "alice-multi-input";
        case Strategy::AliceSuperposed: return "alice-superposed";
        case Strategy::EveInterceptForward: return "eve-intercept";
    }
    return "?";
}

double AttackStats::ci95(double p, std::uint64_t n) {
    if (n == 0) return 0.0;
    return 1.96 * std::sqrt(p * (1.0 - p) / double(n));
}

nlohmann::json AttackStats::to_json() const {
    std::uint64_t sign_samples = sign_plus + sign_minus;
    double p_learned = rate(learned_x);
    double p_detected = rate(detected);
    double p_concealed = rate(learned_and_concealed);
    double p_honesty = rate(honesty_pass);
    double p_plus = sign_samples ? double(sign_plus) / double(sign_samples) : 0.0;
    nlohmann::json j;
    j["trials"] = trials;
    j["learned_x"] = learned_x;
    j["detected"] = detected;
    j["learned_and_concealed"] = learned_and_concealed;
    j["honesty_pass"] = honesty_pass;
    j["sign_plus"] = sign_plus;
    j["sign_minus"] = sign_minus;
    j["rates"] = {{"learned_x", p_learned},
                  {"detected", p_detected},
                  {"learned_and_concealed", p_concealed},
                  {"honesty_pass", p_honesty},
                  {"p_plus", p_plus},
                  {"p_minus", sign_samples ? 1.0 - p_plus : 0.0}};
    j["ci95"] = {{"learned_x", ci95(p_learned, trials)},
                 {"detected", ci95(p_detected, trials)},
                 {"learned_and_concealed", ci95(p_concealed, trials)},
                 {"p_plus", ci95(p_plus, sign_samples)}};
    return j;
}

namespace {

// Measures the t-particle of one pair in the computational basis and decodes
// the result. Returns true when the collapse landed on the |X> branch.
bool measure_t_particle(PairRun& pr, const ProblemParams& p, Rng& rng,
                        RegValue out[3]) {
    out[2] = pr.state.measure_register(pr.t_field(2, p.n), rng);  // x
    out[1] = pr.state.measure_register(pr.t_field(1, p.n), rng);  // y
    out[0] = pr.state.measure_register(pr.t_field(0, p.n), rng);  // r
    return out[0] != 0 || out[1] != 0 || out[2] != 0;
}

struct BobDirectMeasure : protocol::Adversary {
    bool both = false;
    bool learned = false;

    explicit BobDirectMeasure(bool measure_both) : both(measure_both) {}

    void on_bob_hold(std::array<PairRun, 2>& pairs, const ProblemParams& p,
                     Rng& rng) override {
        RegValue v[3];
        learned = measure_t_particle(pairs[0], p, rng, v);
        if (both) learned = measure_t_particle(pairs[1], p, rng, v) || learned;
    }
};

struct BobInterceptResend : protocol::Adversary {
    bool learned = false;
    Circle kept{};  // what Bob reads off the intercepted particle

    void on_bob_return(std::array<PairRun, 2>& pairs, const ProblemParams& p,
                       Rng& rng) override {
        // Bob measures t1 after the oracle, keeps it, and forwards a fresh
        // particle prepared in the measured basis state. The collapse already
        // leaves the register in exactly that state, so the swap is a relabel.
        RegValue v[3];
        learned = measure_t_particle(pairs[0], p, rng, v);
        kept = Circle{std::uint64_t(v[2]), std::uint64_t(v[1]), std::uint64_t(v[0])};
    }
};

struct BobEntangleMeasure : protocol::Adversary {
    bool learned = false;

    bool wants_tap() const override { return true; }

    void on_bob_hold(std::array<PairRun, 2>& pairs, const ProblemParams& p,
                     Rng&) override {
        // epsilon(j) = j: copy each t particle onto Bob's kept register. The
        // orthogonal-tag case, which is the attacker's optimum.
        for (PairRun& pr : pairs)
            protocol::cnot_fanout(pr.state, pr.t_base, pr.e_base, p.m);
    }

    void on_complete(std::array<PairRun, 2>& pairs, const ProblemParams& p,
                     const std::array<Sign, 2>&, Rng& rng) override {
        PairRun& pr = pairs[0];
        RegValue ex = pr.state.measure_register(pr.e_field(2, p.n), rng);
        RegValue ey = pr.state.measure_register(pr.e_field(1, p.n), rng);
        RegValue er = pr.state.measure_register(pr.e_field(0, p.n), rng);
        learned = ex != 0 || ey != 0 || er != 0;
    }
};

struct AliceMultiInputAdv : protocol::Adversary {
    Circle second;
    explicit AliceMultiInputAdv(Circle c) : second(c) {}
    std::optional<Circle> second_input() const override { return second; }
    bool skip_consistency() const override { return true; }
};

}  // namespace

AttackStats run_attack_trials(Strategy strategy, const Circle& alice, const Circle& bob,
                              const ProblemParams& p, std::uint64_t trials,
                              std::uint64_t seed, unsigned decoys) {
    if (trials < 1) throw Error("trials must be >= 1");
    if (strategy == Strategy::EveInterceptForward)
        return eve_intercept(decoys, true, trials, seed);
    if (strategy == Strategy::AliceMultiInput || strategy == Strategy::AliceSuperposed)
        throw Error("strategy has no Monte Carlo trial form; use its dedicated command");

    AttackStats stats;
    for (std::uint64_t i = 0; i < trials; ++i) {
        std::uint64_t trial_seed = derive_seed(seed, i);
        bool learned = false;
        protocol::RunResult res = [&] {
            switch (strategy) {
                case Strategy::BobDirectMeasureOne: {
                    BobDirectMeasure adv(false);
                    auto r = protocol::run_protocol(alice, bob, p, trial_seed, &adv);
                    learned = adv.learned;
                    return r;
                }
                case Strategy::BobDirectMeasureBoth: {
                    BobDirectMeasure adv(true);
                    auto r = protocol::run_protocol(alice, bob, p, trial_seed, &adv);
                    learned = adv.learned;
                    return r;
                }
                case Strategy::BobInterceptResend: {
                    BobInterceptResend adv;
                    auto r = protocol::run_protocol(alice, bob, p, trial_seed, &adv);
                    learned = adv.learned;
                    return r;
                }
                case Strategy::BobEntangleMeasure: {
                    BobEntangleMeasure adv;
                    auto r = protocol::run_protocol(alice, bob, p, trial_seed, &adv);
                    learned = adv.learned;
                    return r;
                }
                default: throw Error("unreachable strategy");
            }
        }();

        stats.trials += 1;
        bool aborted = res.verdict == Verdict::AbortDishonestBob ||
                       res.verdict == Verdict::AbortInconsistentResults;
        if (learned) stats.learned_x += 1;
        if (aborted) stats.detected += 1;
        if (learned && !aborted) stats.learned_and_concealed += 1;
        if (res.transcript.honesty_pass[0] && res.transcript.honesty_pass[1])
            stats.honesty_pass += 1;
        if (!res.transcript.aborted_at_honesty) {
            for (Sign s : res.transcript.signs)
                (s == Sign::Plus ? stats.sign_plus : stats.sign_minus) += 1;
        }
    }
    return stats;
}

std::pair<Sign, Sign> alice_multi_input(const Circle& first, const Circle& second,
                                        const Circle& bob, const ProblemParams& p,
                                        std::uint64_t seed) {
    AliceMultiInputAdv adv(second);
    protocol::RunResult res = protocol::run_protocol(first, bob, p, seed, &adv);
    if (res.transcript.aborted_at_honesty)
        throw Error("multi-input run aborted at honesty test against honest Bob");
    return {res.transcript.signs[0], res.transcript.signs[1]};
}

nlohmann::json SuperposedResult::to_json() const {
    nlohmann::json top_j = nlohmann::json::array();
    for (auto& [outcome, prob] : top) top_j.push_back({{"outcome", outcome}, {"p", prob}});
    return {{"m", m},
            {"marked_count", marked_count},
            {"p_zero", p_zero},
            {"sampled_outcome", sampled_outcome},
            {"top", top_j}};
}

SuperposedResult superposed_query(std::size_t m,
                                  const std::function<int(std::uint64_t)>& phase,
                                  std::uint64_t seed) {
    if (m > 24) throw Error("superposed query limited to 24 qubits");
    const std::size_t N = std::size_t(1) << m;
    std::vector<double> a(N);
    SuperposedResult res;
    res.m = m;
    for (std::size_t j = 0; j < N; ++j) {
        int ph = phase(j);
        a[j] = double(ph);
        if (ph < 0) res.marked_count += 1;
    }
    // H^(x)m on the phase-kicked uniform state is a Walsh-Hadamard transform.
    for (std::size_t len = 1; len < N; len <<= 1)
        for (std::size_t i = 0; i < N; i += 2 * len)
            for (std::size_t k = i; k < i + len; ++k) {
                double u = a[k], v = a[k + len];
                a[k] = u + v;
                a[k + len] = u - v;
            }
    // Amplitudes are a[z] / N; probabilities (a[z]/N)^2.
    double inv_n = 1.0 / double(N);
    res.p_zero = (a[0] * inv_n) * (a[0] * inv_n);

    std::vector<std::uint64_t> idx(N);
    for (std::size_t z = 0; z < N; ++z) idx[z] = z;
    std::partial_sort(idx.begin(), idx.begin() + std::min<std::size_t>(8, N), idx.end(),
                      [&](std::uint64_t l, std::uint64_t r) {
                          return std::abs(a[l]) > std::abs(a[r]);
                      });
    for (std::size_t i = 0; i < std::min<std::size_t>(8, N); ++i) {
        double pr = (a[idx[i]] * inv_n) * (a[idx[i]] * inv_n);
        if (pr < 1e-15) break;
        res.top.emplace_back(idx[i], pr);
    }

    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng), acc = 0.0;
    res.sampled_outcome = N - 1;
    for (std::size_t z = 0; z < N; ++z) {
        acc += (a[z] * inv_n) * (a[z] * inv_n);
        if (u < acc) {
            res.sampled_outcome = z;
            break;
        }
    }
    return res;
}

SuperposedResult alice_superposed(const Circle& bob, const ProblemParams& p,
                                  std::uint64_t seed) {
    if (p.t > 2)
        throw Error("superposed-input attack supported only for t <= 2 "
                    "(dense evaluation over 2^m labels)");
    oracle::OracleOperator op = oracle::build_oracle(bob, p);
    const std::size_t n = p.n;
    const RegValue mask = reg_mask(n);
    return superposed_query(p.m, [&](std::uint64_t j) {
        RegValue r = RegValue(j) & mask;
        RegValue y = (RegValue(j) >> n) & mask;
        RegValue x = (RegValue(j) >> (2 * n)) & mask;
        return oracle::oracle_phase(x, y, r, op);
    }, seed);
}

AttackStats eve_intercept(unsigned decoys, bool eve_present, std::uint64_t trials,
                          std::uint64_t seed) {
    if (decoys < 1) throw Error("decoy count must be >= 1");
    AttackStats stats;
    Register q{0, 1};
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, i));
        bool caught = false;
        for (unsigned d = 0; d < decoys; ++d) {
            bool hadamard_basis = rng() & 1;
            bool bit = rng() & 1;
            SparseState qubit(1);
            if (bit) qubit.apply_x(0);
            if (hadamard_basis) qubit.apply_h(0);
            if (eve_present) qubit.measure_register(q, rng);
            if (hadamard_basis) qubit.apply_h(0);
            if (qubit.measure_register(q, rng) != RegValue(bit)) caught = true;
        }
        stats.trials += 1;
        if (caught) stats.detected += 1;
    }
    return stats;
}

}  // namespace pqci::adversary
