#include "qarith.hpp"

namespace pqci::qarith {

namespace {

void check_width(const Register& r) {
    if (r.width < 2) throw Error("arithmetic register width must be >= 2");
    if (r.width > 127) throw Error("arithmetic register width must be <= 127");
}

void check_disjoint(std::initializer_list<Register> regs) {
    std::vector<Register> v(regs);
    if (!registers_disjoint(v)) throw Error("arithmetic registers overlap");
}

void check_same_width(const Register& a, const Register& b) {
    if (a.width != b.width) throw Error("arithmetic register width mismatch");
}

}  // namespace

nlohmann::json CostTally::to_json() const {
    return {{"adder_runs", adder_runs},
            {"multiplier_runs", multiplier_runs},
            {"single_qubit_gates", single_qubit_gates},
            {"cnot_gates", cnot_gates},
            {"elementary_total", elementary_total}};
}

void add_const(SparseState& s, const Register& reg, RegValue c, CostTally& cost,
               std::span<const Control> controls) {
    check_width(reg);
    RegValue mask = reg_mask(reg.width);
    if ((c & ~mask) != 0) throw Error("add_const: constant out of range");
    s.apply_permutation(reg, [&](RegValue y) { return (y + c) & mask; }, controls);
    cost.add_adder(reg.width);
}

void add_reg(SparseState& s, const Register& src, const Register& dst, CostTally& cost,
             std::span<const Control> controls) {
    check_width(src);
    check_same_width(src, dst);
    check_disjoint({src, dst});
    RegValue mask = reg_mask(src.width);
    Register regs[2] = {src, dst};
    s.apply_register_map(regs, [&](std::span<RegValue> v) { v[1] = (v[1] + v[0]) & mask; },
                         controls);
    cost.add_adder(src.width);
}

void sub_reg(SparseState& s, const Register& src, const Register& dst, CostTally& cost,
             std::span<const Control> controls) {
    check_width(src);
    check_same_width(src, dst);
    check_disjoint({src, dst});
    RegValue mask = reg_mask(src.width);
    Register regs[2] = {src, dst};
    s.apply_register_map(regs, [&](std::span<RegValue> v) { v[1] = (v[1] - v[0]) & mask; },
                         controls);
    cost.add_adder(src.width);
}

void mul_const_accum(SparseState& s, const Register& y_reg, const Register& c_reg,
                     RegValue k, CostTally& cost, std::span<const Control> controls) {
    check_width(y_reg);
    check_same_width(y_reg, c_reg);
    check_disjoint({y_reg, c_reg});
    RegValue mask = reg_mask(y_reg.width);
    if ((k & ~mask) != 0) throw Error("mul_const_accum: constant out of range");
    Register regs[2] = {y_reg, c_reg};
    s.apply_register_map(regs,
                         [&](std::span<RegValue> v) { v[1] = (v[1] + k * v[0]) & mask; },
                         controls);
    cost.add_multiplier(y_reg.width);
}

void mul_const_deaccum(SparseState& s, const Register& y_reg, const Register& c_reg,
                       RegValue k, CostTally& cost, std::span<const Control> controls) {
    RegValue mask = reg_mask(y_reg.width);
    mul_const_accum(s, y_reg, c_reg, (~k + 1) & mask, cost, controls);
}

void mul_reg_accum(SparseState& s, const Register& x_reg, const Register& y_reg,
                   const Register& c_reg, CostTally& cost,
                   std::span<const Control> controls) {
    check_width(x_reg);
    check_same_width(x_reg, y_reg);
    check_same_width(x_reg, c_reg);
    check_disjoint({x_reg, y_reg, c_reg});
    RegValue mask = reg_mask(x_reg.width);
    Register regs[3] = {x_reg, y_reg, c_reg};
    s.apply_register_map(
        regs, [&](std::span<RegValue> v) { v[2] = (v[2] + v[0] * v[1]) & mask; }, controls);
    cost.add_multiplier(x_reg.width);
}

void mul_reg_deaccum(SparseState& s, const Register& x_reg, const Register& y_reg,
                     const Register& c_reg, CostTally& cost,
                     std::span<const Control> controls) {
    check_width(x_reg);
    check_same_width(x_reg, y_reg);
    check_same_width(x_reg, c_reg);
    check_disjoint({x_reg, y_reg, c_reg});
    RegValue mask = reg_mask(x_reg.width);
    Register regs[3] = {x_reg, y_reg, c_reg};
    s.apply_register_map(
        regs, [&](std::span<RegValue> v) { v[2] = (v[2] - v[0] * v[1]) & mask; }, controls);
    cost.add_multiplier(x_reg.width);
}

void negate(SparseState& s, const Register& reg, CostTally& cost,
            std::span<const Control> controls) {
    check_width(reg);
    RegValue mask = reg_mask(reg.width);
    s.apply_permutation(reg, [&](RegValue y) { return (~y + 1) & mask; }, controls);
    cost.add_single(reg.width);  // sigma_X on every qubit
    cost.add_adder(reg.width);   // then +1 mod 2^n
}

void copy_reg(SparseState& s, const Register& src, const Register& dst, CostTally& cost,
              std::span<const Control> controls, bool strict) {
    check_width(src);
    check_same_width(src, dst);
    check_disjoint({src, dst});
    if (strict) {
        for (const auto& [b, a] : s.terms()) {
            bool match = true;
            for (const Control& c : controls)
                if (b.bit(c.qubit) != c.value) match = false;
            if (match && b.get(dst) != 0)
                throw Error("copy_reg: destination register is not |0> (strict mode)");
        }
    }
    Register regs[2] = {src, dst};
    s.apply_register_map(regs, [](std::span<RegValue> v) { v[1] ^= v[0]; }, controls);
    cost.add_cnot(src.width);
}

void sign_phase_flip(SparseState& s, const Register& reg, CostTally& cost,
                     std::span<const Control> controls) {
    check_width(reg);
    std::size_t top = reg.offset + reg.width - 1;
    s.apply_phase([top](const BasisState& b) { return b.bit(top); }, controls);
    cost.add_single(1);
}

}  // namespace pqci::qarith
