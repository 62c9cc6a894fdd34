#include "protocol.hpp"

namespace pqci::protocol {

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Intersect: return "intersect";
        case Verdict::Disjoint: return "disjoint";
        case Verdict::AbortDishonestBob: return "abort:dishonest_bob";
        case Verdict::AbortInconsistentResults: return "abort:inconsistent_results";
        case Verdict::AbortEavesdropperDetected: return "abort:eavesdropper_detected";
    }
    return "?";
}

EncodedInput encode_input(const Circle& c, const ProblemParams& p) {
    geometry::validate_circle(c, p);
    EncodedInput e;
    e.x = c.x;
    e.y = c.y;
    e.r = c.r;
    const std::size_t n = p.n;
    auto collect = [&](RegValue v, std::size_t field_base) {
        for (std::size_t i = 0; i < n; ++i)
            if ((v >> i) & 1) e.j_list.push_back(field_base + i);
    };
    collect(e.r, 0);
    collect(e.y, n);
    collect(e.x, 2 * n);
    std::sort(e.j_list.begin(), e.j_list.end());
    e.j1 = e.j_list.front();  // x >= 1 guarantees X != 0
    return e;
}

Circle decode_input(const EncodedInput& e) {
    return Circle{std::uint64_t(e.x), std::uint64_t(e.y), std::uint64_t(e.r)};
}

void prepare_superposition(SparseState& s, std::size_t base,
                           const std::vector<std::size_t>& j_list,
                           qarith::CostTally* cost) {
    if (j_list.empty()) throw Error("prepare_superposition: X must be nonzero");
    std::size_t j1 = j_list.front();
    s.apply_h(base + j1);
    if (cost) cost->add_single(1);
    for (std::size_t i = 1; i < j_list.size(); ++i) {
        s.apply_cnot(base + j1, base + j_list[i]);
        if (cost) cost->add_cnot(1);
    }
}

void cnot_fanout(SparseState& s, std::size_t from_base, std::size_t to_base,
                 std::size_t m, qarith::CostTally* cost) {
    for (std::size_t i = 0; i < m; ++i) s.apply_cnot(from_base + i, to_base + i);
    if (cost) cost->add_cnot(m);
}

Sign distinguish(SparseState& s, std::size_t base, const std::vector<std::size_t>& j_list,
                 Rng& rng, qarith::CostTally* cost) {
    if (j_list.empty()) throw Error("distinguish: X must be nonzero");
    std::size_t j1 = j_list.front();
    for (std::size_t i = 1; i < j_list.size(); ++i) {
        s.apply_cnot(base + j1, base + j_list[i]);
        if (cost) cost->add_cnot(1);
    }
    s.apply_h(base + j1);
    if (cost) cost->add_single(1);
    RegValue bit = s.measure_register(Register{base + j1, 1}, rng);
    return bit == 0 ? Sign::Plus : Sign::Minus;
}

nlohmann::json Transcript::to_json(const ProblemParams& p, const Circle& alice,
                                   const Circle& bob) const {
    nlohmann::json j;
    j["params"] = {{"t", p.t}, {"n", p.n}, {"m", p.m}};
    j["alice"] = alice.to_string();
    j["bob"] = bob.to_string();
    j["stages"] = stages;
    j["honesty"] = {{"h1", honesty_h[0]},
                    {"h2", honesty_h[1]},
                    {"pass", {honesty_pass[0], honesty_pass[1]}}};
    if (!aborted_at_honesty)
        j["signs"] = {{"t1", sign_str(signs[0])}, {"t2", sign_str(signs[1])}};
    j["outcome"] = verdict_str(verdict);
    j["seed"] = seed;
    j["cost"] = cost.to_json();
    j["communication"] = {{"messages_to_bob", messages_to_bob},
                          {"messages_to_alice", messages_to_alice},
                          {"qubits_per_message", qubits_per_message}};
    j["max_terms"] = max_terms;
    return j;
}

RunResult run_protocol(const Circle& alice, const Circle& bob, const ProblemParams& p,
                       std::uint64_t seed, Adversary* adversary, bool capture_states) {
    geometry::validate_circle(alice, p);
    geometry::validate_circle(bob, p);

    Rng rng(seed);
    Transcript tr;
    tr.seed = seed;
    tr.qubits_per_message = p.m;

    const std::size_t m = p.m;
    const std::size_t n = p.n;
    const bool tap = adversary && adversary->wants_tap();

    std::array<PairRun, 2> pairs{PairRun{SparseState(0)}, PairRun{SparseState(0)}};
    auto note_terms = [&] {
        for (const PairRun& pr : pairs)
            tr.max_terms = std::max(tr.max_terms, pr.state.term_count());
    };
    auto stage = [&](const char* name) {
        nlohmann::json s{{"stage", name}};
        if (capture_states)
            s["states"] = {pairs[0].state.dump(), pairs[1].state.dump()};
        tr.stages.push_back(std::move(s));
        note_terms();
    };

    // Preparation stage: two entangled pairs (|0>|0> + |X>|X>)/sqrt(2).
    for (std::size_t i = 0; i < 2; ++i) {
        Circle input = alice;
        if (i == 1 && adversary) {
            if (auto second = adversary->second_input()) input = *second;
        }
        PairRun& pr = pairs[i];
        pr.m = m;
        pr.t_base = 0;
        pr.h_base = m;
        pr.e_base = 2 * m;
        pr.tapped = tap;
        pr.state = SparseState(tap ? 3 * m : 2 * m);
        pr.enc = encode_input(input, p);
        prepare_superposition(pr.state, pr.h_base, pr.enc.j_list, &tr.cost);
        cnot_fanout(pr.state, pr.h_base, pr.t_base, m, &tr.cost);
    }
    stage("prepare");

    // Operation stage: t1, t2 travel to Bob.
    tr.messages_to_bob = 2;
    stage("send");
    if (adversary) adversary->on_bob_hold(pairs, p, rng);
    note_terms();

    oracle::OracleOperator U = oracle::build_oracle(bob, p);
    for (PairRun& pr : pairs) {
        oracle::InputRegisters in{pr.t_field(2, n), pr.t_field(1, n), pr.t_field(0, n)};
        oracle::apply_oracle(pr.state, U, in);
    }
    tr.cost.merge(U.cost);
    stage("oracle");

    if (adversary) adversary->on_bob_return(pairs, p, rng);
    tr.messages_to_alice = 2;
    stage("return");

    // Honesty test: uncopy t onto h, expect |0> everywhere.
    for (std::size_t i = 0; i < 2; ++i) {
        PairRun& pr = pairs[i];
        cnot_fanout(pr.state, pr.t_base, pr.h_base, m, &tr.cost);
        RegValue hx = pr.state.measure_register(pr.h_field(2, n), rng);
        RegValue hy = pr.state.measure_register(pr.h_field(1, n), rng);
        RegValue hr = pr.state.measure_register(pr.h_field(0, n), rng);
        tr.honesty_h[i] =
            reg_value_str(hx) + "," + reg_value_str(hy) + "," + reg_value_str(hr);
        tr.honesty_pass[i] = (hx == 0 && hy == 0 && hr == 0);
    }
    stage("honesty_test");

    RunResult res;
    if (!tr.honesty_pass[0] || !tr.honesty_pass[1]) {
        tr.aborted_at_honesty = true;
        tr.verdict = Verdict::AbortDishonestBob;
        res.verdict = tr.verdict;
        res.transcript = std::move(tr);
        return res;
    }

    // Output stage: discriminate |X+> from |X-> on each returned particle.
    for (std::size_t i = 0; i < 2; ++i)
        tr.signs[i] = distinguish(pairs[i].state, pairs[i].t_base, pairs[i].enc.j_list,
                                  rng, &tr.cost);
    stage("measure");

    if (adversary && adversary->skip_consistency()) {
        tr.verdict = tr.signs[0] == Sign::Minus ? Verdict::Intersect : Verdict::Disjoint;
    } else if (tr.signs[0] != tr.signs[1]) {
        tr.verdict = Verdict::AbortInconsistentResults;
    } else {
        tr.verdict = tr.signs[0] == Sign::Minus ? Verdict::Intersect : Verdict::Disjoint;
    }
    tr.stages.push_back({{"stage", "announce"}, {"result", verdict_str(tr.verdict)}});

    if (adversary) adversary->on_complete(pairs, p, tr.signs, rng);

    res.verdict = tr.verdict;
    res.transcript = std::move(tr);
    return res;
}

}  // namespace pqci::protocol
