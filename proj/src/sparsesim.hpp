#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rng.hpp"

namespace pqci {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Register values are manipulated as plain integers; 128 bits covers every
// width the protocol needs (n = 2t+3 <= 127, i.e. t <= 62).
using RegValue = unsigned __int128;
using Amplitude = std::complex<double>;

constexpr double kPruneThreshold = 1e-12;
constexpr double kNormTolerance = 1e-10;

inline RegValue reg_mask(std::size_t bits) {
    if (bits >= 128) throw Error("register width exceeds 128 bits");
    if (bits == 0) return 0;
    return (RegValue(1) << bits) - 1;
}

std::string reg_value_str(RegValue v);

// A contiguous range of qubit indices. Bit 0 of the register is the least
// significant bit of the stored value; the sign bit of an n-bit two's
// complement value is qubit offset + width - 1.
struct Register {
    std::size_t offset = 0;
    std::size_t width = 0;
};

bool registers_disjoint(std::span<const Register> regs);

class RegisterLayout {
public:
    Register add(const std::string& name, std::size_t width);
    const Register& reg(std::string_view name) const;
    bool has(std::string_view name) const;
    std::size_t total_width() const { return width_; }
    const std::vector<std::pair<std::string, Register>>& registers() const { return regs_; }

private:
    std::vector<std::pair<std::string, Register>> regs_;
    std::size_t width_ = 0;
};

// A computational-basis label of fixed qubit width.
class BasisState {
public:
    BasisState() = default;
    explicit BasisState(std::size_t width);

    std::size_t width() const { return width_; }
    bool bit(std::size_t q) const;
    void set_bit(std::size_t q, bool v);
    void flip_bit(std::size_t q);

    RegValue get(const Register& r) const;
    void set(const Register& r, RegValue v);

    // Most-significant qubit first.
    std::string to_string() const;

    bool operator==(const BasisState& o) const { return words_ == o.words_; }
    // Numeric order of the bitstring; fixes the iteration order used by
    // measurement sampling so runs reproduce across platforms.
    bool operator<(const BasisState& o) const;

private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;

    friend class SparseState;
};

struct Control {
    std::size_t qubit = 0;
    bool value = true;
};

// State vector stored as a map from basis labels to amplitudes. Everything
// the protocol does keeps this map tiny (two terms in honest runs).
class SparseState {
public:
    explicit SparseState(std::size_t width);  // |0...0>

    // Single-term state with the given per-register assignment.
    static SparseState basis(const RegisterLayout& layout,
                             const std::vector<std::pair<std::string, RegValue>>& init);

    std::size_t width() const { return width_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<BasisState, Amplitude>& terms() const { return terms_; }
    Amplitude amplitude(const BasisState& b) const;

    void apply_x(std::size_t qubit);
    void apply_z(std::size_t qubit);
    void apply_h(std::size_t qubit);
    void apply_cnot(std::size_t control, std::size_t target);

    // Remaps the values of the given registers in every (control-matching)
    // term. `fn` mutates the value vector in place and must be a bijection on
    // the combined register contents; this is checked exhaustively when the
    // combined width is <= 12 bits and by output-collision detection
    // otherwise.
    void apply_register_map(std::span<const Register> regs,
                            const std::function<void(std::span<RegValue>)>& fn,
                            std::span<const Control> controls = {});

    // Single-register convenience wrapper around apply_register_map.
    void apply_permutation(const Register& reg,
                           const std::function<RegValue(RegValue)>& fn,
                           std::span<const Control> controls = {});

    // Negates the amplitude of every control-matching term for which `pred`
    // holds on the basis label.
    void apply_phase(const std::function<bool(const BasisState&)>& pred,
                     std::span<const Control> controls = {});

    // Born-rule measurement of a register (width <= 127). Collapses in place.
    RegValue measure_register(const Register& r, Rng& rng);

    // |+>/|-> basis measurement of one qubit: +1 for |+>, -1 for |->.
    int measure_pm(std::size_t qubit, Rng& rng);

    double norm_sq() const;
    double fidelity(const SparseState& other) const;

    // Appends `extra` qubits initialised to |0> (every term gains zero bits
    // at the top).
    void extend(std::size_t extra);
    // Removes the top `extra` qubits, which must be |0> in every term.
    void shrink(std::size_t extra);

    // One line per term: `bitstring re im`, most-significant qubit first.
    std::string dump() const;

    void check_normalized() const;

private:
    std::size_t width_ = 0;
    std::map<BasisState, Amplitude> terms_;

    bool controls_match(const BasisState& b, std::span<const Control> controls) const;
    void check_qubit(std::size_t q) const;
    void renormalize();
};

double fidelity(const SparseState& a, const SparseState& b);

// --- Dense reference backend -------------------------------------------------
//
// Literal 2^width state-vector evolution, capped at 12 qubits. Serves as the
// independent cross-check for the sparse implementation.

constexpr std::size_t kDenseMaxQubits = 12;

class DenseState {
public:
    explicit DenseState(std::size_t width);  // |0...0>
    static DenseState from_sparse(const SparseState& s);

    std::size_t width() const { return width_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }

    void apply_x(std::size_t qubit);
    void apply_z(std::size_t qubit);
    void apply_h(std::size_t qubit);
    void apply_cnot(std::size_t control, std::size_t target);
    void apply_register_map(std::span<const Register> regs,
                            const std::function<void(std::span<RegValue>)>& fn,
                            std::span<const Control> controls = {});

    // Largest |amp_dense - amp_sparse| over all basis states.
    double max_diff(const SparseState& s) const;

private:
    std::size_t width_ = 0;
    std::vector<Amplitude> amps_;
};

}  // namespace pqci
