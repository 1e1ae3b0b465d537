#include "qsdc/tableau.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "qsdc/errors.hpp"

namespace qsdc {

namespace {
constexpr std::size_t kWordBits = 64;
constexpr int kDebugCheckMaxQubits = 192;

std::size_t words_for(int n) {
    return (static_cast<std::size_t>(n) + kWordBits - 1) / kWordBits;
}
} // namespace

StabilizerTableau::StabilizerTableau(int n, std::uint64_t rng_seed)
    : n_(n), words_(words_for(n)), rng_(rng_seed) {
    if (n < 1) throw dimension_error("qubit count must be >= 1");
    xz_.assign(2 * static_cast<std::size_t>(n), std::vector<std::uint64_t>(2 * words_, 0));
    sign_.assign(2 * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        xz_[i][i / kWordBits] |= std::uint64_t(1) << (i % kWordBits); // destab X_i
        xz_[n + i][words_ + i / kWordBits] |= std::uint64_t(1) << (i % kWordBits); // stab Z_i
    }
}

bool StabilizerTableau::xbit(std::size_t row, int q) const {
    return (xz_[row][q / kWordBits] >> (q % kWordBits)) & 1;
}

bool StabilizerTableau::zbit(std::size_t row, int q) const {
    return (xz_[row][words_ + q / kWordBits] >> (q % kWordBits)) & 1;
}

void StabilizerTableau::apply_h(int q) {
    if (q < 0 || q >= n_) throw dimension_error("qubit index out of range");
    const std::size_t xw = q / kWordBits, zw = words_ + q / kWordBits;
    const std::uint64_t m = std::uint64_t(1) << (q % kWordBits);
    for (std::size_t r = 0; r < xz_.size(); ++r) {
        auto& row = xz_[r];
        const std::uint64_t x = row[xw] & m, z = row[zw] & m;
        sign_[r] ^= (x & z) != 0;
        row[xw] ^= x ^ z;
        row[zw] ^= x ^ z;
    }
    maybe_debug_check();
}

void StabilizerTableau::apply_x(int q) {
    if (q < 0 || q >= n_) throw dimension_error("qubit index out of range");
    const std::size_t zw = words_ + q / kWordBits;
    const std::uint64_t m = std::uint64_t(1) << (q % kWordBits);
    for (std::size_t r = 0; r < xz_.size(); ++r)
        sign_[r] ^= (xz_[r][zw] & m) != 0;
    maybe_debug_check();
}

void StabilizerTableau::apply_z(int q) {
    if (q < 0 || q >= n_) throw dimension_error("qubit index out of range");
    const std::size_t xw = q / kWordBits;
    const std::uint64_t m = std::uint64_t(1) << (q % kWordBits);
    for (std::size_t r = 0; r < xz_.size(); ++r)
        sign_[r] ^= (xz_[r][xw] & m) != 0;
    maybe_debug_check();
}

void StabilizerTableau::apply_cnot(int control, int target) {
    if (control < 0 || control >= n_ || target < 0 || target >= n_)
        throw dimension_error("qubit index out of range");
    if (control == target) throw dimension_error("cnot control equals target");
    const std::size_t xcw = control / kWordBits, xtw = target / kWordBits;
    const std::size_t zcw = words_ + xcw, ztw = words_ + xtw;
    const std::uint64_t mc = std::uint64_t(1) << (control % kWordBits);
    const std::uint64_t mt = std::uint64_t(1) << (target % kWordBits);
    for (std::size_t r = 0; r < xz_.size(); ++r) {
        auto& row = xz_[r];
        const bool xc = row[xcw] & mc, xt = row[xtw] & mt;
        const bool zc = row[zcw] & mc, zt = row[ztw] & mt;
        sign_[r] ^= xc && zt && (xt == zc);
        if (xc) row[xtw] ^= mt;
        if (zt) row[zcw] ^= mc;
    }
    maybe_debug_check();
}

void StabilizerTableau::apply_h_all(int start, int width) {
    for (int i = 0; i < width; ++i) apply_h(start + i);
}

void StabilizerTableau::apply_phase_oracle(int start, const BitVector& s, OracleMode mode,
                                           int ancilla) {
    if (start < 0 || start + static_cast<int>(s.size()) > n_)
        throw dimension_error("oracle register exceeds state width");
    if (mode == OracleMode::circuit) {
        if (ancilla < 0 || ancilla >= n_) throw dimension_error("bad oracle ancilla");
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s.bit(i)) apply_cnot(start + static_cast<int>(i), ancilla);
        return;
    }
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.bit(i)) apply_z(start + static_cast<int>(i));
}

int StabilizerTableau::row_phase_exponent(std::size_t h, std::size_t i) const {
    // Sum over columns of the Pauli-product phase function g, mod 4; the
    // per-word masks classify each column into +1 / -1 contributions.
    const auto& rh = xz_[h];
    const auto& ri = xz_[i];
    std::uint64_t plus = 0, minus = 0;
    int acc = 0;
    for (std::size_t w = 0; w < words_; ++w) {
        const std::uint64_t x1 = ri[w], z1 = ri[words_ + w];
        const std::uint64_t x2 = rh[w], z2 = rh[words_ + w];
        plus = (~x1 & z1 & x2 & ~z2) | (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2);
        minus = (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2);
        acc += std::popcount(plus) - std::popcount(minus);
    }
    return ((acc % 4) + 4) % 4;
}

void StabilizerTableau::rowsum(std::size_t h, std::size_t i) {
    const int g = row_phase_exponent(h, i);
    const int phase = (2 * sign_[h] + 2 * sign_[i] + g) % 4;
    if (phase % 2 != 0) throw invariant_error("rowsum produced imaginary phase");
    sign_[h] = static_cast<std::uint8_t>(phase / 2);
    auto& rh = xz_[h];
    const auto& ri = xz_[i];
    for (std::size_t w = 0; w < 2 * words_; ++w) rh[w] ^= ri[w];
}

int StabilizerTableau::measure(int q) {
    if (q < 0 || q >= n_) throw dimension_error("qubit index out of range");
    const std::size_t xw = q / kWordBits;
    const std::uint64_t m = std::uint64_t(1) << (q % kWordBits);
    const std::size_t n = static_cast<std::size_t>(n_);

    std::size_t p = 2 * n;
    for (std::size_t r = n; r < 2 * n; ++r)
        if (xz_[r][xw] & m) {
            p = r;
            break;
        }

    if (p < 2 * n) {
        // Random outcome: Z_q anticommutes with stabilizer p. Park that
        // stabilizer in its destabilizer slot first, then multiply it into
        // every other row that anticommutes with Z_q; the parked row commutes
        // with all of them, so the phase arithmetic stays real.
        xz_[p - n] = xz_[p];
        sign_[p - n] = sign_[p];
        std::fill(xz_[p].begin(), xz_[p].end(), 0);
        xz_[p][words_ + xw] |= m;
        const int outcome = rng_.next_bit() ? 1 : 0;
        sign_[p] = static_cast<std::uint8_t>(outcome);
        for (std::size_t r = 0; r < 2 * n; ++r)
            if (r != p && r != p - n && (xz_[r][xw] & m)) rowsum(r, p - n);
        maybe_debug_check();
        return outcome;
    }

    // Deterministic: accumulate the matching stabilizers into a scratch row.
    std::vector<std::uint64_t> scratch(2 * words_, 0);
    std::uint8_t scratch_sign = 0;
    xz_.push_back(std::move(scratch));
    sign_.push_back(scratch_sign);
    const std::size_t sidx = xz_.size() - 1;
    for (std::size_t r = 0; r < n; ++r)
        if (xz_[r][xw] & m) rowsum(sidx, r + n);
    const int outcome = sign_[sidx];
    xz_.pop_back();
    sign_.pop_back();
    return outcome;
}

BitVector StabilizerTableau::measure_register(int start, int width, Basis basis) {
    if (basis == Basis::hadamard) apply_h_all(start, width);
    std::uint64_t value = 0;
    std::vector<int> bits(width);
    for (int i = 0; i < width; ++i) bits[i] = measure(start + i);
    if (basis == Basis::hadamard) apply_h_all(start, width);
    if (width <= 64) {
        for (int i = 0; i < width; ++i) value |= std::uint64_t(bits[i]) << i;
        return BitVector::from_uint(width, value);
    }
    std::string text(width, '0');
    for (int i = 0; i < width; ++i)
        if (bits[i]) text[width - 1 - i] = '1';
    return BitVector::parse(text);
}

void StabilizerTableau::add_qubits(int k) {
    if (k < 0) throw dimension_error("negative qubit count");
    if (k == 0) return;
    const int new_n = n_ + k;
    const std::size_t new_words = words_for(new_n);
    const std::size_t nn = static_cast<std::size_t>(new_n);
    std::vector<std::vector<std::uint64_t>> xz(2 * nn,
                                               std::vector<std::uint64_t>(2 * new_words, 0));
    std::vector<std::uint8_t> sign(2 * nn, 0);
    const std::size_t n = static_cast<std::size_t>(n_);
    for (std::size_t r = 0; r < 2 * n; ++r) {
        const std::size_t dst = r < n ? r : r + k; // destabs stay, stabs shift up
        for (std::size_t w = 0; w < words_; ++w) {
            xz[dst][w] = xz_[r][w];
            xz[dst][new_words + w] = xz_[r][words_ + w];
        }
        sign[dst] = sign_[r];
    }
    for (int j = 0; j < k; ++j) {
        const int q = n_ + j;
        xz[n + j][q / kWordBits] |= std::uint64_t(1) << (q % kWordBits);
        xz[nn + n + j][new_words + q / kWordBits] |= std::uint64_t(1) << (q % kWordBits);
    }
    xz_ = std::move(xz);
    sign_ = std::move(sign);
    n_ = new_n;
    words_ = new_words;
}

void StabilizerTableau::absorb(StabilizerTableau&& other) {
    const int base = n_;
    add_qubits(other.n_);
    const std::size_t n = static_cast<std::size_t>(n_);
    const std::size_t on = static_cast<std::size_t>(other.n_);
    for (std::size_t r = 0; r < 2 * on; ++r) {
        const std::size_t dst = (r < on ? base + r : n + base + (r - on));
        auto& row = xz_[dst];
        std::fill(row.begin(), row.end(), 0);
        for (int q = 0; q < other.n_; ++q) {
            const int nq = base + q;
            if (other.xbit(r, q)) row[nq / kWordBits] |= std::uint64_t(1) << (nq % kWordBits);
            if (other.zbit(r, q))
                row[words_ + nq / kWordBits] |= std::uint64_t(1) << (nq % kWordBits);
        }
        sign_[dst] = other.sign_[r];
    }
}

void StabilizerTableau::check_invariants() const {
    const std::size_t n = static_cast<std::size_t>(n_);
    // Rank over GF(2): eliminate the 2n x 2n binary matrix.
    std::vector<std::vector<std::uint64_t>> mat = xz_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n && rank < mat.size(); ++col) {
        const std::size_t word = (col < n) ? col / kWordBits
                                           : words_ + (col - n) / kWordBits;
        const std::uint64_t mask = std::uint64_t(1)
                                   << ((col < n ? col : col - n) % kWordBits);
        std::size_t pivot = mat.size();
        for (std::size_t r = rank; r < mat.size(); ++r)
            if (mat[r][word] & mask) {
                pivot = r;
                break;
            }
        if (pivot == mat.size()) continue;
        std::swap(mat[rank], mat[pivot]);
        for (std::size_t r = 0; r < mat.size(); ++r)
            if (r != rank && (mat[r][word] & mask))
                for (std::size_t w2 = 0; w2 < mat[r].size(); ++w2)
                    mat[r][w2] ^= mat[rank][w2];
        ++rank;
    }
    if (rank != 2 * n)
        throw invariant_error("tableau generators lost full rank");

    // Symplectic pairing: destab i anticommutes with stab i only.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int sym = 0;
            for (std::size_t w = 0; w < words_; ++w) {
                const std::uint64_t x1 = xz_[i][w], z1 = xz_[i][words_ + w];
                const std::uint64_t x2 = xz_[n + j][w], z2 = xz_[n + j][words_ + w];
                sym ^= std::popcount((x1 & z2) ^ (z1 & x2)) & 1;
            }
            if (sym != ((i == j) ? 1 : 0))
                throw invariant_error("tableau symplectic pairing broken");
        }
}

void StabilizerTableau::maybe_debug_check() {
#ifndef NDEBUG
    if (++op_count_ % 1000 == 0 && n_ <= kDebugCheckMaxQubits) check_invariants();
#else
    ++op_count_;
#endif
}

} // namespace qsdc
