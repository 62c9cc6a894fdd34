#pragma once

#include "geometry.hpp"
#include "qarith.hpp"
#include "sparsesim.hpp"

namespace pqci::oracle {

// Bob's compiled phase oracle. Applying it multiplies each basis term
// |x1>|y1>|r1> by (-1) exactly when the circles intersect (D - R < 0), with
// the all-zeros input left untouched. Diagonal, hence an involution.
struct OracleOperator {
    geometry::Circle bob;
    geometry::OracleCoeffs coeffs;
    geometry::ProblemParams params;
    qarith::CostTally cost;  // accumulated over every application
};

OracleOperator build_oracle(const geometry::Circle& bob, const geometry::ProblemParams& p);

struct InputRegisters {
    Register x;
    Register y;
    Register r;
};

// Applies the full pipeline: zero-guard, working-register arithmetic, the
// sign flip on the accumulated D - R, and complete uncomputation. Ancilla
// registers (a, e1..e3, g1..g3) are attached for the duration and verified
// restored on detach.
void apply_oracle(SparseState& s, OracleOperator& op, const InputRegisters& in);

// Classical reference f(x1, y1, r1) = [D - R < 0] for in-range triples.
bool f_predicate(std::uint64_t x1, std::uint64_t y1, std::uint64_t r1,
                 const geometry::Circle& bob);

// The exact phase the simulated operator applies to an arbitrary basis label,
// including out-of-range register contents and the zero guard. +1 or -1.
int oracle_phase(RegValue x, RegValue y, RegValue r, const OracleOperator& op);

}  // namespace pqci::oracle
