#pragma once

#include <cstdint>
#include <vector>

#include "qsdc/bitvec.hpp"
#include "qsdc/dense.hpp"
#include "qsdc/rng.hpp"

namespace qsdc {

/// Stabilizer backend in the full destabilizer/stabilizer tableau form:
/// rows 0..n-1 are destabilizer generators, rows n..2n-1 stabilizers, each a
/// bit-packed X block, Z block and sign bit. Gates are O(n), measurement
/// O(n^2) worst case. Every circuit in the protocols is Clifford, so this
/// backend is exact at any width.
class StabilizerTableau {
public:
    /// |0...0> on n qubits.
    StabilizerTableau(int n, std::uint64_t rng_seed);

    int num_qubits() const { return n_; }

    void apply_h(int q);
    void apply_x(int q);
    void apply_z(int q);
    void apply_cnot(int control, int target);
    void apply_h_all(int start, int width);

    /// Z on every register qubit whose secret bit is set; this is the whole
    /// phase oracle, since (-1)^(s.x) = prod_i Z_i^(s_i).
    void apply_phase_oracle(int start, const BitVector& s, OracleMode mode,
                            int ancilla = -1);

    /// Deterministic when +/-Z_q is in the stabilizer group, otherwise a fair
    /// coin from the tableau's generator (the only randomness consumed).
    int measure(int q);

    /// Matches DenseState::measure_register: ascending qubit order, bit i of
    /// the result from qubit start+i.
    BitVector measure_register(int start, int width, Basis basis = Basis::computational);

    /// Grow by k fresh |0> qubits at the top indices; one relayout per call.
    void add_qubits(int k);

    /// Block-union with another tableau; its qubit j becomes n+j here.
    void absorb(StabilizerTableau&& other);

    /// Full-rank and symplectic-pairing check over GF(2). Throws
    /// invariant_error on violation. Debug builds run it automatically every
    /// 1000 operations on small tableaus.
    void check_invariants() const;

    CounterRng& rng() { return rng_; }

private:
    void rowsum(std::size_t h, std::size_t i);
    int row_phase_exponent(std::size_t h, std::size_t i) const;
    bool xbit(std::size_t row, int q) const;
    bool zbit(std::size_t row, int q) const;
    void maybe_debug_check();

    int n_;
    std::size_t words_; // packed words per X or Z block
    // Row r occupies rows_[r]: words_ X words, then words_ Z words.
    std::vector<std::vector<std::uint64_t>> xz_;
    std::vector<std::uint8_t> sign_;
    CounterRng rng_;
    std::uint64_t op_count_ = 0;
};

} // namespace qsdc
