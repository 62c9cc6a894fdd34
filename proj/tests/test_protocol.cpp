#include "doctest.h"

#include "protocol.hpp"

using namespace pqci;
using namespace pqci::protocol;
using geometry::Circle;
using geometry::ProblemParams;

TEST_CASE("input encoding round-trips and exposes the nonzero bits") {
    ProblemParams p = ProblemParams::for_precision(3);
    Circle c{5, 3, 1};
    EncodedInput e = encode_input(c, p);
    CHECK(std::uint64_t(e.x) == 5);
    CHECK(std::uint64_t(e.y) == 3);
    CHECK(std::uint64_t(e.r) == 1);
    CHECK(decode_input(e) == c);

    // r=1 -> bit 0; y=3 -> bits 9,10; x=5 -> bits 18,20.
    CHECK(e.j_list == std::vector<std::size_t>{0, 9, 10, 18, 20});
    CHECK(e.j1 == 0);

    Circle c2{4, 1, 2};
    EncodedInput e2 = encode_input(c2, p);
    CHECK(e2.j_list == std::vector<std::size_t>{1, 9, 20});
    CHECK(e2.j1 == 1);
}

TEST_CASE("preparation builds the two-term query state") {
    ProblemParams p = ProblemParams::for_precision(2);
    EncodedInput e = encode_input(Circle{2, 2, 1}, p);
    SparseState s(p.m);
    qarith::CostTally cost;
    prepare_superposition(s, 0, e.j_list, &cost);

    REQUIRE(s.term_count() == 2);
    BasisState zero(p.m), x(p.m);
    for (std::size_t j : e.j_list) x.set_bit(j, true);
    CHECK(s.amplitude(zero).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(s.amplitude(x).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    // One H plus a CNOT per remaining nonzero bit.
    CHECK(cost.single_qubit_gates == 1);
    CHECK(cost.cnot_gates == e.j_list.size() - 1);
}

TEST_CASE("distinguish reads the relative phase deterministically") {
    ProblemParams p = ProblemParams::for_precision(2);
    EncodedInput e = encode_input(Circle{3, 1, 2}, p);

    for (int negate = 0; negate < 2; ++negate) {
        SparseState s(p.m);
        prepare_superposition(s, 0, e.j_list);
        if (negate)
            s.apply_phase([&](const BasisState& b) { return b.bit(e.j1); });
        Rng rng(42);
        Sign got = distinguish(s, 0, e.j_list, rng);
        CHECK(got == (negate ? Sign::Minus : Sign::Plus));
        // Fully determined outcome: one term, j1 carrying the read-off bit.
        BasisState want(p.m);
        want.set_bit(e.j1, negate != 0);
        CHECK(std::abs(s.amplitude(want)) == doctest::Approx(1.0));
    }
}

TEST_CASE("pair primitives match the dense backend on toy widths") {
    // 3-qubit particles: X = 101 (j_list {0,2}), h block above t block.
    const std::size_t m = 3;
    std::vector<std::size_t> j_list{0, 2};
    SparseState sparse(2 * m);
    DenseState dense(2 * m);

    prepare_superposition(sparse, 0, j_list);
    dense.apply_h(0);
    dense.apply_cnot(0, 2);

    cnot_fanout(sparse, 0, m, m);
    for (std::size_t q = 0; q < m; ++q) dense.apply_cnot(q, m + q);

    CHECK(dense.max_diff(sparse) < 1e-12);
}

TEST_CASE("honesty test mechanics on a toy pair") {
    const std::size_t m = 3;
    std::vector<std::size_t> j_list{0, 2};

    // Honest channel: uncopy returns h to all zeros in both branches.
    SparseState honest(2 * m);
    prepare_superposition(honest, 0, j_list);
    cnot_fanout(honest, 0, m, m);
    cnot_fanout(honest, 0, m, m);
    Rng rng(7);
    CHECK(std::uint64_t(honest.measure_register(Register{m, m}, rng)) == 0);
    CHECK(honest.term_count() == 2);  // superposition survives the check

    // Tampered channel: Bob measured t, a later uncopy still gives h = 0
    // (collapse keeps t and h equal), but the phase information is gone.
    SparseState collapsed(2 * m);
    prepare_superposition(collapsed, 0, j_list);
    cnot_fanout(collapsed, 0, m, m);
    collapsed.measure_register(Register{0, m}, rng);
    cnot_fanout(collapsed, 0, m, m);
    CHECK(std::uint64_t(collapsed.measure_register(Register{m, m}, rng)) == 0);
    CHECK(collapsed.term_count() == 1);

    // Substitution: a fresh particle in some other basis state shows up in h.
    SparseState swapped(2 * m);
    prepare_superposition(swapped, 0, j_list);
    cnot_fanout(swapped, 0, m, m);
    swapped.measure_register(Register{0, m}, rng);
    swapped.apply_x(1);  // substituted particle differs on qubit 1
    cnot_fanout(swapped, 0, m, m);
    CHECK(std::uint64_t(swapped.measure_register(Register{m, m}, rng)) != 0);
}

TEST_CASE("honest runs decide intersection and stay two-term sparse") {
    ProblemParams p = ProblemParams::for_precision(2);
    struct Case {
        Circle alice, bob;
    } cases[] = {
        {{2, 2, 1}, {2, 3, 1}},
        {{1, 1, 1}, {3, 3, 1}},
        {{3, 3, 2}, {1, 1, 2}},
        {{1, 3, 1}, {3, 1, 1}},
    };
    std::uint64_t seed = 100;
    for (const Case& c : cases) {
        RunResult res = run_protocol(c.alice, c.bob, p, seed++);
        Verdict want = geometry::intersects(c.alice, c.bob) ? Verdict::Intersect
                                                            : Verdict::Disjoint;
        CHECK(res.verdict == want);
        CHECK(res.transcript.honesty_pass[0]);
        CHECK(res.transcript.honesty_pass[1]);
        CHECK(res.transcript.signs[0] == res.transcript.signs[1]);
        CHECK(res.transcript.max_terms == 2);
        CHECK(res.transcript.messages_to_bob == 2);
        CHECK(res.transcript.messages_to_alice == 2);
        CHECK(res.transcript.qubits_per_message == p.m);
    }
}

TEST_CASE("transcripts are deterministic in the seed") {
    ProblemParams p = ProblemParams::for_precision(3);
    Circle alice{5, 2, 1}, bob{3, 6, 2};
    RunResult a = run_protocol(alice, bob, p, 424242);
    RunResult b = run_protocol(alice, bob, p, 424242);
    CHECK(a.transcript.to_json(p, alice, bob) == b.transcript.to_json(p, alice, bob));
}

TEST_CASE("runs validate their inputs") {
    ProblemParams p = ProblemParams::for_precision(2);
    CHECK_THROWS_AS(run_protocol(Circle{0, 1, 1}, Circle{2, 2, 1}, p, 1), Error);
    CHECK_THROWS_AS(run_protocol(Circle{1, 1, 1}, Circle{4, 2, 1}, p, 1), Error);
}

TEST_CASE("captured stages describe the run") {
    ProblemParams p = ProblemParams::for_precision(2);
    RunResult res = run_protocol(Circle{2, 2, 1}, Circle{2, 3, 1}, p, 9, nullptr, true);
    REQUIRE(res.transcript.stages.size() > 0);
    std::vector<std::string> names;
    for (const auto& st : res.transcript.stages)
        names.push_back(st["stage"].get<std::string>());
    CHECK(names.front() == "prepare");
    bool has_oracle = false;
    for (const auto& n : names) has_oracle = has_oracle || n == "oracle";
    CHECK(has_oracle);
}
