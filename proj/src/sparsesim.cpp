#include "sparsesim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace pqci {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

std::string reg_value_str(RegValue v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

bool registers_disjoint(std::span<const Register> regs) {
    for (std::size_t i = 0; i < regs.size(); ++i)
        for (std::size_t j = i + 1; j < regs.size(); ++j) {
            std::size_t lo = std::max(regs[i].offset, regs[j].offset);
            std::size_t hi = std::min(regs[i].offset + regs[i].width,
                                      regs[j].offset + regs[j].width);
            if (lo < hi) return false;
        }
    return true;
}

// --- RegisterLayout ----------------------------------------------------------

Register RegisterLayout::add(const std::string& name, std::size_t width) {
    if (width == 0) throw Error("register '" + name + "' has zero width");
    if (has(name)) throw Error("duplicate register name '" + name + "'");
    Register r{width_, width};
    regs_.emplace_back(name, r);
    width_ += width;
    return r;
}

const Register& RegisterLayout::reg(std::string_view name) const {
    for (const auto& [n, r] : regs_)
        if (n == name) return r;
    throw Error("unknown register '" + std::string(name) + "'");
}

bool RegisterLayout::has(std::string_view name) const {
    for (const auto& [n, r] : regs_)
        if (n == name) return true;
    return false;
}

// --- BasisState --------------------------------------------------------------

BasisState::BasisState(std::size_t width)
    : width_(width), words_((width + 63) / 64, 0) {}

bool BasisState::bit(std::size_t q) const {
    return (words_[q / 64] >> (q % 64)) & 1ULL;
}

void BasisState::set_bit(std::size_t q, bool v) {
    if (v)
        words_[q / 64] |= (1ULL << (q % 64));
    else
        words_[q / 64] &= ~(1ULL << (q % 64));
}

void BasisState::flip_bit(std::size_t q) { words_[q / 64] ^= (1ULL << (q % 64)); }

RegValue BasisState::get(const Register& r) const {
    if (r.offset + r.width > width_) throw Error("register out of state range");
    RegValue v = 0;
    for (std::size_t i = r.width; i-- > 0;) v = (v << 1) | RegValue(bit(r.offset + i));
    return v;
}

void BasisState::set(const Register& r, RegValue v) {
    if (r.offset + r.width > width_) throw Error("register out of state range");
    if (r.width < 128 && (v >> r.width) != 0) throw Error("register value overflow");
    for (std::size_t i = 0; i < r.width; ++i) set_bit(r.offset + i, (v >> i) & 1);
}

std::string BasisState::to_string() const {
    std::string s(width_, '0');
    for (std::size_t i = 0; i < width_; ++i)
        if (bit(i)) s[width_ - 1 - i] = '1';
    return s;
}

bool BasisState::operator<(const BasisState& o) const {
    if (width_ != o.width_) return width_ < o.width_;
    for (std::size_t i = words_.size(); i-- > 0;)
        if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
    return false;
}

// --- SparseState -------------------------------------------------------------

SparseState::SparseState(std::size_t width) : width_(width) {
    terms_.emplace(BasisState(width), Amplitude(1.0, 0.0));
}

SparseState SparseState::basis(const RegisterLayout& layout,
                               const std::vector<std::pair<std::string, RegValue>>& init) {
    SparseState s(layout.total_width());
    BasisState b(layout.total_width());
    for (const auto& [name, value] : init) {
        const Register& r = layout.reg(name);
        if (r.width < 128 && (value >> r.width) != 0)
            throw Error("initial value overflows register '" + name + "'");
        b.set(r, value);
    }
    s.terms_.clear();
    s.terms_.emplace(b, Amplitude(1.0, 0.0));
    return s;
}

Amplitude SparseState::amplitude(const BasisState& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Amplitude(0.0, 0.0) : it->second;
}

void SparseState::check_qubit(std::size_t q) const {
    if (q >= width_) throw Error("qubit index out of range");
}

void SparseState::apply_x(std::size_t qubit) {
    check_qubit(qubit);
    std::map<BasisState, Amplitude> out;
    for (auto& [b, a] : terms_) {
        BasisState nb = b;
        nb.flip_bit(qubit);
        out.emplace(std::move(nb), a);
    }
    terms_ = std::move(out);
}

void SparseState::apply_z(std::size_t qubit) {
    check_qubit(qubit);
    for (auto& [b, a] : terms_)
        if (b.bit(qubit)) a = -a;
}

void SparseState::apply_h(std::size_t qubit) {
    check_qubit(qubit);
    std::map<BasisState, Amplitude> out;
    for (const auto& [b, a] : terms_) {
        BasisState flipped = b;
        flipped.flip_bit(qubit);
        if (b.bit(qubit)) {
            out[flipped] += a * kInvSqrt2;
            out[b] -= a * kInvSqrt2;
        } else {
            out[b] += a * kInvSqrt2;
            out[flipped] += a * kInvSqrt2;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (std::abs(it->second) < kPruneThreshold)
            it = out.erase(it);
        else
            ++it;
    }
    terms_ = std::move(out);
}

void SparseState::apply_cnot(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw Error("CNOT control equals target");
    std::map<BasisState, Amplitude> out;
    for (const auto& [b, a] : terms_) {
        BasisState nb = b;
        if (nb.bit(control)) nb.flip_bit(target);
        out.emplace(std::move(nb), a);
    }
    terms_ = std::move(out);
}

bool SparseState::controls_match(const BasisState& b, std::span<const Control> controls) const {
    for (const Control& c : controls)
        if (b.bit(c.qubit) != c.value) return false;
    return true;
}

void SparseState::apply_register_map(std::span<const Register> regs,
                                     const std::function<void(std::span<RegValue>)>& fn,
                                     std::span<const Control> controls) {
    if (!registers_disjoint(regs)) throw Error("register map targets overlap");
    std::size_t total_bits = 0;
    for (const Register& r : regs) {
        if (r.offset + r.width > width_) throw Error("register out of state range");
        total_bits += r.width;
    }
    for (const Control& c : controls) {
        check_qubit(c.qubit);
        for (const Register& r : regs)
            if (c.qubit >= r.offset && c.qubit < r.offset + r.width)
                throw Error("control qubit overlaps register map target");
    }

    // Exhaustive bijectivity check for small maps.
    if (total_bits <= 12) {
        std::vector<bool> seen(std::size_t(1) << total_bits, false);
        std::vector<RegValue> vals(regs.size());
        for (std::size_t x = 0; x < (std::size_t(1) << total_bits); ++x) {
            std::size_t shift = 0;
            for (std::size_t i = 0; i < regs.size(); ++i) {
                vals[i] = (RegValue(x) >> shift) & reg_mask(regs[i].width);
                shift += regs[i].width;
            }
            fn(vals);
            std::size_t y = 0;
            shift = 0;
            for (std::size_t i = 0; i < regs.size(); ++i) {
                if (regs[i].width < 128 && (vals[i] >> regs[i].width) != 0)
                    throw Error("register map produced out-of-range value");
                y |= std::size_t(vals[i]) << shift;
                shift += regs[i].width;
            }
            if (seen[y]) throw Error("register map is not a bijection");
            seen[y] = true;
        }
    }

    std::map<BasisState, Amplitude> out;
    std::vector<RegValue> vals(regs.size());
    for (const auto& [b, a] : terms_) {
        if (!controls_match(b, controls)) {
            out.emplace(b, a);
            continue;
        }
        for (std::size_t i = 0; i < regs.size(); ++i) vals[i] = b.get(regs[i]);
        fn(vals);
        BasisState nb = b;
        for (std::size_t i = 0; i < regs.size(); ++i) {
            if (regs[i].width < 128 && (vals[i] >> regs[i].width) != 0)
                throw Error("register map produced out-of-range value");
            nb.set(regs[i], vals[i]);
        }
        // Permutations never merge terms; a collision means the map is not
        // injective on the touched values.
        if (!out.emplace(std::move(nb), a).second)
            throw Error("register map collision: map is not injective");
    }
    terms_ = std::move(out);
}

void SparseState::apply_permutation(const Register& reg,
                                    const std::function<RegValue(RegValue)>& fn,
                                    std::span<const Control> controls) {
    Register regs[1] = {reg};
    apply_register_map(regs, [&](std::span<RegValue> v) { v[0] = fn(v[0]); }, controls);
}

void SparseState::apply_phase(const std::function<bool(const BasisState&)>& pred,
                              std::span<const Control> controls) {
    for (auto& [b, a] : terms_)
        if (controls_match(b, controls) && pred(b)) a = -a;
}

RegValue SparseState::measure_register(const Register& r, Rng& rng) {
    if (r.offset + r.width > width_) throw Error("register out of state range");
    // Cumulative walk in basis order: deterministic for a fixed seed.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    double acc = 0.0;
    RegValue value = 0;
    bool picked = false;
    for (const auto& [b, a] : terms_) {
        acc += std::norm(a);
        if (!picked && u < acc) {
            value = b.get(r);
            picked = true;
        }
    }
    if (!picked) value = terms_.rbegin()->first.get(r);  // u landed on rounding slack
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.get(r) != value)
            it = terms_.erase(it);
        else
            ++it;
    }
    renormalize();
    return value;
}

int SparseState::measure_pm(std::size_t qubit, Rng& rng) {
    check_qubit(qubit);
    apply_h(qubit);
    RegValue bit = measure_register(Register{qubit, 1}, rng);
    apply_h(qubit);
    return bit == 0 ? +1 : -1;
}

double SparseState::norm_sq() const {
    double n = 0.0;
    for (const auto& [b, a] : terms_) n += std::norm(a);
    return n;
}

void SparseState::renormalize() {
    double n = std::sqrt(norm_sq());
    if (n == 0.0) throw Error("projection produced the zero state");
    for (auto& [b, a] : terms_) a /= n;
}

double SparseState::fidelity(const SparseState& other) const {
    if (width_ != other.width_) throw Error("fidelity: width mismatch");
    Amplitude inner(0.0, 0.0);
    for (const auto& [b, a] : terms_) {
        auto it = other.terms_.find(b);
        if (it != other.terms_.end()) inner += std::conj(a) * it->second;
    }
    return std::norm(inner);
}

double fidelity(const SparseState& a, const SparseState& b) { return a.fidelity(b); }

void SparseState::extend(std::size_t extra) {
    std::map<BasisState, Amplitude> out;
    for (const auto& [b, a] : terms_) {
        BasisState nb(width_ + extra);
        for (std::size_t i = 0; i < width_; ++i) nb.set_bit(i, b.bit(i));
        out.emplace(std::move(nb), a);
    }
    width_ += extra;
    terms_ = std::move(out);
}

void SparseState::shrink(std::size_t extra) {
    if (extra > width_) throw Error("shrink exceeds state width");
    std::size_t new_width = width_ - extra;
    std::map<BasisState, Amplitude> out;
    for (const auto& [b, a] : terms_) {
        for (std::size_t i = new_width; i < width_; ++i)
            if (b.bit(i)) throw Error("shrink: discarded qubits are not |0>");
        BasisState nb(new_width);
        for (std::size_t i = 0; i < new_width; ++i) nb.set_bit(i, b.bit(i));
        out.emplace(std::move(nb), a);
    }
    width_ = new_width;
    terms_ = std::move(out);
}

std::string SparseState::dump() const {
    std::ostringstream os;
    for (const auto& [b, a] : terms_)
        os << b.to_string() << ' ' << a.real() << ' ' << a.imag() << '\n';
    return os.str();
}

void SparseState::check_normalized() const {
    if (std::abs(norm_sq() - 1.0) > kNormTolerance) throw Error("state norm drifted");
}

// --- DenseState --------------------------------------------------------------

DenseState::DenseState(std::size_t width) : width_(width) {
    if (width > kDenseMaxQubits) throw Error("dense backend capped at 12 qubits");
    amps_.assign(std::size_t(1) << width, Amplitude(0.0, 0.0));
    amps_[0] = Amplitude(1.0, 0.0);
}

DenseState DenseState::from_sparse(const SparseState& s) {
    DenseState d(s.width());
    d.amps_.assign(d.amps_.size(), Amplitude(0.0, 0.0));
    for (const auto& [b, a] : s.terms()) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < s.width(); ++i)
            if (b.bit(i)) idx |= std::size_t(1) << i;
        d.amps_[idx] = a;
    }
    return d;
}

void DenseState::apply_x(std::size_t qubit) {
    std::size_t m = std::size_t(1) << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
}

void DenseState::apply_z(std::size_t qubit) {
    std::size_t m = std::size_t(1) << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (i & m) amps_[i] = -amps_[i];
}

void DenseState::apply_h(std::size_t qubit) {
    std::size_t m = std::size_t(1) << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & m) continue;
        Amplitude lo = amps_[i], hi = amps_[i | m];
        amps_[i] = (lo + hi) * kInvSqrt2;
        amps_[i | m] = (lo - hi) * kInvSqrt2;
    }
}

void DenseState::apply_cnot(std::size_t control, std::size_t target) {
    if (control == target) throw Error("CNOT control equals target");
    std::size_t cm = std::size_t(1) << control;
    std::size_t tm = std::size_t(1) << target;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
}

void DenseState::apply_register_map(std::span<const Register> regs,
                                    const std::function<void(std::span<RegValue>)>& fn,
                                    std::span<const Control> controls) {
    if (!registers_disjoint(regs)) throw Error("register map targets overlap");
    std::vector<Amplitude> out(amps_.size(), Amplitude(0.0, 0.0));
    std::vector<RegValue> vals(regs.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        bool match = true;
        for (const Control& c : controls)
            if (bool((i >> c.qubit) & 1) != c.value) match = false;
        if (!match) {
            out[i] += amps_[i];
            continue;
        }
        for (std::size_t r = 0; r < regs.size(); ++r)
            vals[r] = (RegValue(i) >> regs[r].offset) & reg_mask(regs[r].width);
        fn(vals);
        std::size_t j = i;
        for (std::size_t r = 0; r < regs.size(); ++r) {
            std::size_t mask = ((std::size_t(1) << regs[r].width) - 1) << regs[r].offset;
            j = (j & ~mask) | (std::size_t(vals[r]) << regs[r].offset);
        }
        out[j] += amps_[i];
    }
    amps_ = std::move(out);
}

double DenseState::max_diff(const SparseState& s) const {
    if (s.width() != width_) throw Error("width mismatch");
    DenseState other = DenseState::from_sparse(s);
    double m = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        m = std::max(m, std::abs(amps_[i] - other.amps_[i]));
    return m;
}

}  // namespace pqci
