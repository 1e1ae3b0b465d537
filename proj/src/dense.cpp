#include "qsdc/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qsdc/errors.hpp"

namespace qsdc {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr int kSampleQubitCap = 22; // prefix table is 2^n doubles
} // namespace

DenseState::DenseState(int n, std::uint64_t rng_seed, int qubit_cap)
    : n_(n), cap_(qubit_cap), rng_(rng_seed) {
    if (n < 1) throw dimension_error("qubit count must be >= 1");
    if (n > cap_)
        throw resource_error("dense state of " + std::to_string(n) +
                             " qubits exceeds cap " + std::to_string(cap_));
    amps_.assign(std::uint64_t(1) << n, 0.0);
    amps_[0] = 1.0;
}

DenseState DenseState::init_basis(int n, std::uint64_t basis_index,
                                  std::uint64_t rng_seed, int qubit_cap) {
    DenseState s(n, rng_seed, qubit_cap);
    if (basis_index >= s.dim()) throw dimension_error("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[basis_index] = 1.0;
    return s;
}

void DenseState::check_qubit(int q) const {
    if (q < 0 || q >= n_) throw dimension_error("qubit index out of range");
}

void DenseState::maybe_debug_norm() const {
#ifndef NDEBUG
    if (n_ <= 16) check_norm();
#endif
}

void DenseState::apply_h(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t(1) << q;
    for (std::uint64_t base = 0; base < dim(); base += 2 * step)
        for (std::uint64_t i = base; i < base + step; ++i) {
            auto a0 = amps_[i];
            auto a1 = amps_[i + step];
            amps_[i] = kInvSqrt2 * (a0 + a1);
            amps_[i + step] = kInvSqrt2 * (a0 - a1);
        }
    maybe_debug_norm();
}

void DenseState::apply_x(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t(1) << q;
    for (std::uint64_t base = 0; base < dim(); base += 2 * step)
        for (std::uint64_t i = base; i < base + step; ++i)
            std::swap(amps_[i], amps_[i + step]);
    maybe_debug_norm();
}

void DenseState::apply_z(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t(1) << q;
    for (std::uint64_t base = step; base < dim(); base += 2 * step)
        for (std::uint64_t i = base; i < base + step; ++i)
            amps_[i] = -amps_[i];
    maybe_debug_norm();
}

void DenseState::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw dimension_error("cnot control equals target");
    const std::uint64_t cmask = std::uint64_t(1) << control;
    const std::uint64_t tmask = std::uint64_t(1) << target;
    for (std::uint64_t i = 0; i < dim(); ++i)
        if ((i & cmask) && !(i & tmask))
            std::swap(amps_[i], amps_[i | tmask]);
    maybe_debug_norm();
}

void DenseState::apply_h_all(int start, int width) {
    for (int i = 0; i < width; ++i) apply_h(start + i);
}

void DenseState::apply_phase_oracle(int start, const BitVector& s, OracleMode mode,
                                    int ancilla) {
    if (start < 0 || start + static_cast<int>(s.size()) > n_)
        throw dimension_error("oracle register exceeds state width");
    if (mode == OracleMode::diagonal) {
        const std::uint64_t mask = s.to_uint() << start;
        for (std::uint64_t i = 0; i < dim(); ++i)
            if (std::popcount(i & mask) & 1) amps_[i] = -amps_[i];
        return;
    }
    // Kickback form: the ancilla sits in |->, so x_i CNOTed into it
    // contributes (-1)^(x_i) for every set secret bit.
    check_qubit(ancilla);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.bit(i)) apply_cnot(start + static_cast<int>(i), ancilla);
}

int DenseState::measure(int q) {
    check_qubit(q);
    const std::uint64_t mask = std::uint64_t(1) << q;
    double p1 = 0.0;
    for (std::uint64_t i = 0; i < dim(); ++i)
        if (i & mask) p1 += std::norm(amps_[i]);
    const int outcome = rng_.next_unit() < p1 ? 1 : 0;
    const double keep = outcome ? p1 : 1.0 - p1;
    const double scale = 1.0 / std::sqrt(keep);
    for (std::uint64_t i = 0; i < dim(); ++i) {
        if (((i & mask) != 0) != (outcome != 0))
            amps_[i] = 0.0;
        else
            amps_[i] *= scale;
    }
    return outcome;
}

BitVector DenseState::measure_register(int start, int width, Basis basis) {
    if (basis == Basis::hadamard) apply_h_all(start, width);
    BitVector out(width);
    std::uint64_t value = 0;
    for (int i = 0; i < width; ++i)
        value |= std::uint64_t(measure(start + i)) << i;
    out = BitVector::from_uint(width, value);
    if (basis == Basis::hadamard) apply_h_all(start, width);
    return out;
}

std::vector<std::uint64_t> DenseState::sample_counts(const std::vector<int>& positions,
                                                     std::uint64_t shots) {
    if (n_ > kSampleQubitCap)
        throw resource_error("sample_counts limited to states of <= 22 qubits");
    if (positions.size() > 24)
        throw resource_error("sample_counts outcome table too wide");
    for (int q : positions) check_qubit(q);

    std::vector<double> prefix(dim());
    double acc = 0.0;
    for (std::uint64_t i = 0; i < dim(); ++i) {
        acc += std::norm(amps_[i]);
        prefix[i] = acc;
    }

    std::vector<std::uint64_t> counts(std::uint64_t(1) << positions.size(), 0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        double u = rng_.next_unit() * acc;
        auto it = std::lower_bound(prefix.begin(), prefix.end(), u);
        std::uint64_t index = it == prefix.end() ? dim() - 1
                                                 : std::uint64_t(it - prefix.begin());
        std::uint64_t packed = 0;
        for (std::size_t b = 0; b < positions.size(); ++b)
            packed |= ((index >> positions[b]) & 1) << b;
        ++counts[packed];
    }
    return counts;
}

void DenseState::add_qubits(int k) {
    if (k < 0) throw dimension_error("negative qubit count");
    if (n_ + k > cap_)
        throw resource_error("dense state growth to " + std::to_string(n_ + k) +
                             " qubits exceeds cap " + std::to_string(cap_));
    amps_.resize(std::uint64_t(1) << (n_ + k), 0.0);
    n_ += k;
}

void DenseState::absorb(DenseState&& other) {
    if (n_ + other.n_ > cap_)
        throw resource_error("dense merge to " + std::to_string(n_ + other.n_) +
                             " qubits exceeds cap " + std::to_string(cap_));
    std::vector<std::complex<double>> merged(std::uint64_t(1) << (n_ + other.n_));
    for (std::uint64_t j = 0; j < other.dim(); ++j) {
        if (other.amps_[j] == std::complex<double>(0.0)) continue;
        const std::uint64_t base = j << n_;
        for (std::uint64_t i = 0; i < dim(); ++i)
            merged[base | i] = amps_[i] * other.amps_[j];
    }
    amps_ = std::move(merged);
    n_ += other.n_;
}

double DenseState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void DenseState::check_norm() const {
    if (std::fabs(norm_squared() - 1.0) > 1e-9)
        throw invariant_error("state norm drifted beyond 1e-9");
}

double DenseState::overlap(const DenseState& other) const {
    if (n_ != other.n_) throw dimension_error("overlap of unequal widths");
    std::complex<double> ip = 0.0;
    for (std::uint64_t i = 0; i < dim(); ++i)
        ip += std::conj(amps_[i]) * other.amps_[i];
    return std::abs(ip);
}

std::string DenseState::dump(double threshold) const {
    std::ostringstream out;
    for (std::uint64_t i = 0; i < dim(); ++i)
        if (std::abs(amps_[i]) > threshold)
            out << i << " " << amps_[i].real() << " " << amps_[i].imag() << "\n";
    return out.str();
}

DenseState prepare_phi_plus_pairs(int m, std::uint64_t seed, RegisterLayout& layout,
                                  bool with_ancilla, int qubit_cap) {
    const int n = 2 * m + (with_ancilla ? 1 : 0);
    DenseState state(n, seed, qubit_cap);
    layout = RegisterLayout{};
    layout.add("BR", 0, m);
    layout.add("AR", m, m);
    for (int j = 0; j < m; ++j) {
        state.apply_h(m + j);
        state.apply_cnot(m + j, j);
    }
    if (with_ancilla) {
        layout.add("AQ", 2 * m, 1);
        state.apply_x(2 * m);
        state.apply_h(2 * m);
    }
    layout.validate(n);
    return state;
}

DenseState prepare_ghz3_triplets(int m, std::uint64_t seed, RegisterLayout& layout,
                                 bool with_ancillas, int qubit_cap) {
    const int n = 3 * m + (with_ancillas ? 2 : 0);
    DenseState state(n, seed, qubit_cap);
    layout = RegisterLayout{};
    layout.add("AR", 0, m);
    layout.add("BR", m, m);
    layout.add("CR", 2 * m, m);
    for (int j = 0; j < m; ++j) {
        state.apply_h(j);
        state.apply_cnot(j, m + j);
        state.apply_cnot(j, 2 * m + j);
    }
    if (with_ancillas) {
        layout.add("BQ", 3 * m, 1);
        layout.add("CQ", 3 * m + 1, 1);
        for (int q : {3 * m, 3 * m + 1}) {
            state.apply_x(q);
            state.apply_h(q);
        }
    }
    layout.validate(n);
    return state;
}

} // namespace qsdc
