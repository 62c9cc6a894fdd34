#pragma once

#include <cstdint>

#include "json.hpp"
#include "sparsesim.hpp"

namespace pqci::qarith {

// Gate-cost accounting for the complexity report. The simulator executes
// arithmetic as exact basis permutations; the tally records what a
// gate-level decomposition would spend. Conventions: one adder run over an
// n-bit register costs n elementary units, one multiplier run costs n adder
// runs, single-qubit gates and CNOTs cost one unit each.
struct CostTally {
    std::uint64_t adder_runs = 0;
    std::uint64_t multiplier_runs = 0;
    std::uint64_t single_qubit_gates = 0;
    std::uint64_t cnot_gates = 0;
    std::uint64_t elementary_total = 0;

    void add_adder(std::size_t n) {
        adder_runs += 1;
        elementary_total += n;
    }
    void add_multiplier(std::size_t n) {
        multiplier_runs += 1;
        adder_runs += n;
        elementary_total += std::uint64_t(n) * n;
    }
    void add_single(std::size_t count = 1) {
        single_qubit_gates += count;
        elementary_total += count;
    }
    void add_cnot(std::size_t count = 1) {
        cnot_gates += count;
        elementary_total += count;
    }
    // The 3n-controlled flip of the oracle's zero guard, tallied at 3n units.
    void add_multi_controlled(std::size_t units) {
        cnot_gates += 1;
        elementary_total += units;
    }
    void merge(const CostTally& o) {
        adder_runs += o.adder_runs;
        multiplier_runs += o.multiplier_runs;
        single_qubit_gates += o.single_qubit_gates;
        cnot_gates += o.cnot_gates;
        elementary_total += o.elementary_total;
    }
    nlohmann::json to_json() const;
};

// All operations below are exact permutations of register values, applied to
// every term whose control bits match, arithmetic mod 2^reg.width.

// |y> -> |y + c mod 2^n>
void add_const(SparseState& s, const Register& reg, RegValue c, CostTally& cost,
               std::span<const Control> controls = {});

// |x>|y> -> |x>|y + x mod 2^n>
void add_reg(SparseState& s, const Register& src, const Register& dst, CostTally& cost,
             std::span<const Control> controls = {});

// Inverse of add_reg.
void sub_reg(SparseState& s, const Register& src, const Register& dst, CostTally& cost,
             std::span<const Control> controls = {});

// |y>|c> -> |y>|c + k*y mod 2^n>
void mul_const_accum(SparseState& s, const Register& y_reg, const Register& c_reg,
                     RegValue k, CostTally& cost, std::span<const Control> controls = {});

// Inverse of mul_const_accum.
void mul_const_deaccum(SparseState& s, const Register& y_reg, const Register& c_reg,
                       RegValue k, CostTally& cost, std::span<const Control> controls = {});

// |x>|y>|c> -> |x>|y>|c + x*y mod 2^n>
void mul_reg_accum(SparseState& s, const Register& x_reg, const Register& y_reg,
                   const Register& c_reg, CostTally& cost,
                   std::span<const Control> controls = {});

// Inverse of mul_reg_accum.
void mul_reg_deaccum(SparseState& s, const Register& x_reg, const Register& y_reg,
                     const Register& c_reg, CostTally& cost,
                     std::span<const Control> controls = {});

// Two's complement: |y> -> |2^n - y mod 2^n> (bitwise NOT, then +1).
void negate(SparseState& s, const Register& reg, CostTally& cost,
            std::span<const Control> controls = {});

// CNOT fanout |x>|d> -> |x>|d XOR x>. With strict=true the destination must
// hold 0 in every matching term (the protocol precondition for a copy).
void copy_reg(SparseState& s, const Register& src, const Register& dst, CostTally& cost,
              std::span<const Control> controls = {}, bool strict = false);

// Pauli Z on the register's top qubit: flips the phase of every term whose
// two's complement value is negative.
void sign_phase_flip(SparseState& s, const Register& reg, CostTally& cost,
                     std::span<const Control> controls = {});

}  // namespace pqci::qarith
