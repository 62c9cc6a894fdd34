#include "doctest.h"

#include <cmath>

#include "sparsesim.hpp"

using namespace pqci;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

BasisState label(std::size_t width, std::uint64_t bits) {
    BasisState b(width);
    for (std::size_t q = 0; q < width; ++q) b.set_bit(q, (bits >> q) & 1);
    return b;
}

}  // namespace

TEST_CASE("single qubit gates on basis states") {
    SparseState s(2);
    CHECK(s.term_count() == 1);
    CHECK(s.amplitude(label(2, 0)).real() == doctest::Approx(1.0));

    s.apply_x(0);
    CHECK(s.amplitude(label(2, 1)).real() == doctest::Approx(1.0));

    s.apply_z(0);
    CHECK(s.amplitude(label(2, 1)).real() == doctest::Approx(-1.0));
    s.apply_z(1);  // qubit 1 is |0>, no phase
    CHECK(s.amplitude(label(2, 1)).real() == doctest::Approx(-1.0));

    s.apply_x(0);  // state is now -|00>
    s.apply_h(0);
    CHECK(s.term_count() == 2);
    CHECK(s.amplitude(label(2, 0)).real() == doctest::Approx(-kInvSqrt2));
    CHECK(s.amplitude(label(2, 1)).real() == doctest::Approx(-kInvSqrt2));
    s.check_normalized();
}

TEST_CASE("cnot entangles and h interference prunes terms") {
    SparseState s(2);
    s.apply_h(0);
    s.apply_cnot(0, 1);
    CHECK(s.term_count() == 2);
    CHECK(s.amplitude(label(2, 0)).real() == doctest::Approx(kInvSqrt2));
    CHECK(s.amplitude(label(2, 3)).real() == doctest::Approx(kInvSqrt2));

    s.apply_cnot(0, 1);
    s.apply_h(0);
    CHECK(s.term_count() == 1);  // interference cancels |1>, pruning kicks in
    CHECK(s.amplitude(label(2, 0)).real() == doctest::Approx(1.0));
}

TEST_CASE("gate involutions restore the state") {
    Rng rng(11);
    SparseState s(4);
    std::uniform_int_distribution<int> qd(0, 3);
    for (int i = 0; i < 6; ++i) s.apply_h(qd(rng));
    SparseState before = s;

    s.apply_x(2);
    s.apply_x(2);
    s.apply_z(1);
    s.apply_z(1);
    s.apply_h(3);
    s.apply_h(3);
    s.apply_cnot(0, 2);
    s.apply_cnot(0, 2);
    CHECK(fidelity(s, before) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random circuits match the dense backend") {
    Rng rng(20240901);
    std::uniform_int_distribution<std::size_t> width_d(2, 10);
    std::uniform_int_distribution<int> gate_count_d(1, 50);
    std::uniform_int_distribution<int> gate_d(0, 3);

    for (int circuit = 0; circuit < 100; ++circuit) {
        std::size_t w = width_d(rng);
        std::uniform_int_distribution<std::size_t> qd(0, w - 1);
        SparseState sparse(w);
        DenseState dense(w);
        int gates = gate_count_d(rng);
        for (int g = 0; g < gates; ++g) {
            std::size_t q = qd(rng);
            switch (gate_d(rng)) {
                case 0: sparse.apply_x(q); dense.apply_x(q); break;
                case 1: sparse.apply_z(q); dense.apply_z(q); break;
                case 2: sparse.apply_h(q); dense.apply_h(q); break;
                default: {
                    std::size_t t = qd(rng);
                    if (t == q) t = (t + 1) % w;
                    sparse.apply_cnot(q, t);
                    dense.apply_cnot(q, t);
                }
            }
        }
        CHECK(dense.max_diff(sparse) < 1e-10);
    }
}

TEST_CASE("register map applies a permutation with controls") {
    RegisterLayout layout;
    Register a = layout.add("a", 3);
    Register c = layout.add("c", 1);
    SparseState s = SparseState::basis(layout, {{"a", 5}, {"c", 0}});

    s.apply_permutation(a, [](RegValue v) { return (v + 3) & 7; },
                        std::vector<Control>{{c.offset, true}});
    CHECK(s.amplitude(label(4, 5)).real() == doctest::Approx(1.0));  // control off

    s.apply_x(c.offset);
    s.apply_permutation(a, [](RegValue v) { return (v + 3) & 7; },
                        std::vector<Control>{{c.offset, true}});
    BasisState want(4);
    want.set(a, 0);  // 5 + 3 mod 8
    want.set(c, 1);
    CHECK(s.amplitude(want).real() == doctest::Approx(1.0));
}

TEST_CASE("non-bijective register maps are rejected") {
    RegisterLayout layout;
    Register a = layout.add("a", 3);
    SparseState s = SparseState::basis(layout, {{"a", 1}});
    CHECK_THROWS_AS(s.apply_permutation(a, [](RegValue) { return RegValue(0); }), Error);
}

TEST_CASE("apply_phase flips matching amplitudes only") {
    SparseState s(2);
    s.apply_h(0);
    s.apply_phase([](const BasisState& b) { return b.bit(0); });
    CHECK(s.amplitude(label(2, 0)).real() == doctest::Approx(kInvSqrt2));
    CHECK(s.amplitude(label(2, 1)).real() == doctest::Approx(-kInvSqrt2));
}

TEST_CASE("measurement frequencies and determinism") {
    Register r{0, 1};
    int ones = 0;
    const int shots = 10000;
    for (int i = 0; i < shots; ++i) {
        Rng rng(derive_seed(77, i));
        SparseState s(1);
        s.apply_h(0);
        ones += int(std::uint64_t(s.measure_register(r, rng)));
    }
    double rate = double(ones) / shots;
    CHECK(rate == doctest::Approx(0.5).epsilon(0.04));

    // Same seed, same collapse.
    for (int i = 0; i < 20; ++i) {
        Rng r1(derive_seed(5, i)), r2(derive_seed(5, i));
        SparseState a(3), b(3);
        for (std::size_t q = 0; q < 3; ++q) { a.apply_h(q); b.apply_h(q); }
        CHECK(a.measure_register(Register{0, 3}, r1) ==
              b.measure_register(Register{0, 3}, r2));
    }
}

TEST_CASE("measurement collapses and renormalizes") {
    Rng rng(3);
    SparseState s(2);
    s.apply_h(0);
    s.apply_cnot(0, 1);
    RegValue v = s.measure_register(Register{0, 1}, rng);
    CHECK(s.term_count() == 1);
    CHECK(s.norm_sq() == doctest::Approx(1.0));
    // The entangled partner collapsed with it.
    CHECK(std::uint64_t(s.measure_register(Register{1, 1}, rng)) == std::uint64_t(v));
}

TEST_CASE("plus minus measurement distinguishes H eigenstates") {
    Rng rng(4);
    SparseState plus(1);
    plus.apply_h(0);
    CHECK(plus.measure_pm(0, rng) == 1);

    SparseState minus(1);
    minus.apply_x(0);
    minus.apply_h(0);
    CHECK(minus.measure_pm(0, rng) == -1);
}

TEST_CASE("extend and shrink manage ancilla blocks") {
    SparseState s(2);
    s.apply_h(0);
    s.extend(3);
    CHECK(s.width() == 5);
    s.apply_cnot(0, 4);
    CHECK_THROWS_AS(s.shrink(3), Error);  // qubit 4 entangled, not |0>
    s.apply_cnot(0, 4);
    s.shrink(3);
    CHECK(s.width() == 2);
    CHECK(s.term_count() == 2);
}

TEST_CASE("dump prints msb-first labels with amplitudes") {
    SparseState s(3);
    s.apply_x(2);
    CHECK(s.dump() == "100 1 0\n");
    s.apply_h(0);
    std::string d = s.dump();
    CHECK(d.find("100 0.707107 0\n") != std::string::npos);
    CHECK(d.find("101 0.707107 0\n") != std::string::npos);
}

TEST_CASE("register layout tracks offsets and rejects duplicates") {
    RegisterLayout layout;
    Register a = layout.add("a", 4);
    Register b = layout.add("b", 3);
    CHECK(a.offset == 0);
    CHECK(b.offset == 4);
    CHECK(layout.total_width() == 7);
    CHECK(layout.has("a"));
    CHECK(!layout.has("z"));
    CHECK_THROWS_AS(layout.add("a", 2), Error);

    std::vector<Register> disjoint{a, b};
    std::vector<Register> overlap{a, Register{2, 3}};
    CHECK(registers_disjoint(disjoint));
    CHECK(!registers_disjoint(overlap));
}

TEST_CASE("reg_value_str renders 128-bit values") {
    CHECK(reg_value_str(0) == "0");
    CHECK(reg_value_str(12345) == "12345");
    RegValue big = (RegValue(1) << 100) + 7;
    CHECK(reg_value_str(big) == "1267650600228229401496703205383");
}
