#include "oracle.hpp"

#include <array>

namespace pqci::oracle {

using geometry::Circle;
using geometry::ProblemParams;

OracleOperator build_oracle(const Circle& bob, const ProblemParams& p) {
    geometry::validate_circle(bob, p);
    OracleOperator op;
    op.bob = bob;
    op.params = p;
    op.coeffs = geometry::oracle_coeffs(bob, p.n);
    return op;
}

bool f_predicate(std::uint64_t x1, std::uint64_t y1, std::uint64_t r1, const Circle& bob) {
    return geometry::intersects(Circle{x1, y1, r1}, bob);
}

int oracle_phase(RegValue x, RegValue y, RegValue r, const OracleOperator& op) {
    if (x == 0 && y == 0 && r == 0) return +1;  // zero guard
    RegValue v = geometry::linearized_d_minus_r(x, y, r, op.coeffs, op.params.n);
    bool negative = (v >> (op.params.n - 1)) & 1;
    return negative ? -1 : +1;
}

namespace {

// One recorded arithmetic step, replayed backwards for the uncomputation.
struct StepOp {
    std::function<void()> fwd;
    std::function<void()> inv;
};

}  // namespace

void apply_oracle(SparseState& s, OracleOperator& op, const InputRegisters& in) {
    const std::size_t n = op.params.n;
    if (in.x.width != n || in.y.width != n || in.r.width != n)
        throw Error("apply_oracle: input registers must be n qubits each");
    Register inputs[3] = {in.x, in.y, in.r};
    if (!registers_disjoint(inputs)) throw Error("apply_oracle: input registers overlap");

    // Attach the workspace: |1>_a and six zeroed n-qubit registers.
    const std::size_t base = s.width();
    s.extend(1 + 6 * n);
    const Register a{base, 1};
    const Register e1{base + 1, n}, e2{base + 1 + n, n}, e3{base + 1 + 2 * n, n};
    const Register g1{base + 1 + 3 * n, n}, g2{base + 1 + 4 * n, n}, g3{base + 1 + 5 * n, n};
    s.apply_x(a.offset);  // ancilla preparation, not tallied

    qarith::CostTally& cost = op.cost;
    const RegValue mask = reg_mask(n);

    // Flip every input qubit, toggle `a` when all 3n are set, unflip: leaves
    // a = 0 exactly on the X = 0 branch.
    auto zero_test = [&] {
        for (const Register& r : inputs)
            for (std::size_t q = 0; q < n; ++q) s.apply_x(r.offset + q);
        cost.add_single(3 * n);
        Register mcx[4] = {in.x, in.y, in.r, a};
        s.apply_register_map(mcx, [&](std::span<RegValue> v) {
            if (v[0] == mask && v[1] == mask && v[2] == mask) v[3] ^= 1;
        });
        cost.add_multi_controlled(3 * n);
        for (const Register& r : inputs)
            for (std::size_t q = 0; q < n; ++q) s.apply_x(r.offset + q);
        cost.add_single(3 * n);
    };

    zero_test();

    const std::array<Control, 1> on_a{Control{a.offset, true}};
    std::span<const Control> ctl(on_a);
    const geometry::OracleCoeffs k = op.coeffs;

    std::vector<StepOp> steps;
    auto copy3 = [&] {
        qarith::copy_reg(s, in.x, e1, cost, ctl);
        qarith::copy_reg(s, in.y, e2, cost, ctl);
        qarith::copy_reg(s, in.r, e3, cost, ctl);
    };
    // Step 1: fan the inputs out into e1..e3.
    steps.push_back({copy3, copy3});
    // Step 2: two's complement of register 3, giving |-r1>.
    steps.push_back({[&] { qarith::negate(s, in.r, cost, ctl); },
                     [&] { qarith::negate(s, in.r, cost, ctl); }});
    // Step 3: squares into g1, g2 and -r1^2 into g3.
    steps.push_back({[&] {
                         qarith::mul_reg_accum(s, in.x, e1, g1, cost, ctl);
                         qarith::mul_reg_accum(s, in.y, e2, g2, cost, ctl);
                         qarith::mul_reg_accum(s, in.r, e3, g3, cost, ctl);
                     },
                     [&] {
                         qarith::mul_reg_deaccum(s, in.r, e3, g3, cost, ctl);
                         qarith::mul_reg_deaccum(s, in.y, e2, g2, cost, ctl);
                         qarith::mul_reg_deaccum(s, in.x, e1, g1, cost, ctl);
                     }});
    // Step 4: restore r1 and e1..e3, then the cross terms k_i * input into e1..e3.
    steps.push_back({[&] {
                         qarith::negate(s, in.r, cost, ctl);
                         copy3();
                         qarith::mul_const_accum(s, in.x, e1, k.k1, cost, ctl);
                         qarith::mul_const_accum(s, in.y, e2, k.k2, cost, ctl);
                         qarith::mul_const_accum(s, in.r, e3, k.k3, cost, ctl);
                     },
                     [&] {
                         qarith::mul_const_deaccum(s, in.r, e3, k.k3, cost, ctl);
                         qarith::mul_const_deaccum(s, in.y, e2, k.k2, cost, ctl);
                         qarith::mul_const_deaccum(s, in.x, e1, k.k1, cost, ctl);
                         copy3();
                         qarith::negate(s, in.r, cost, ctl);
                     }});
    // Step 5: accumulate everything into g3.
    steps.push_back({[&] {
                         qarith::add_reg(s, e1, g1, cost, ctl);
                         qarith::add_reg(s, e2, g2, cost, ctl);
                         qarith::add_reg(s, e3, g3, cost, ctl);
                         qarith::add_reg(s, g1, g3, cost, ctl);
                         qarith::add_reg(s, g2, g3, cost, ctl);
                     },
                     [&] {
                         qarith::sub_reg(s, g2, g3, cost, ctl);
                         qarith::sub_reg(s, g1, g3, cost, ctl);
                         qarith::sub_reg(s, e3, g3, cost, ctl);
                         qarith::sub_reg(s, e2, g2, cost, ctl);
                         qarith::sub_reg(s, e1, g1, cost, ctl);
                     }});
    // Step 6: the constant term, completing D - R in g3.
    steps.push_back({[&] { qarith::add_const(s, g3, k.k4, cost, ctl); },
                     [&] { qarith::add_const(s, g3, (~k.k4 + 1) & mask, cost, ctl); }});

    for (auto& st : steps) st.fwd();
    // Step 7: the phase flip on the sign bit of D - R.
    qarith::sign_phase_flip(s, g3, cost, ctl);
    // Step 8: uncompute.
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) it->inv();

    zero_test();  // restores a to |1> on the X = 0 branch

    // Detach, verifying ancilla hygiene exactly.
    s.apply_x(a.offset);
    s.shrink(1 + 6 * n);
}

}  // namespace pqci::oracle
