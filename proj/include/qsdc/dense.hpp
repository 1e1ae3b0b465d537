#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qsdc/bitvec.hpp"
#include "qsdc/layout.hpp"
#include "qsdc/rng.hpp"

namespace qsdc {

enum class Basis { computational, hadamard };
enum class OracleMode { diagonal, circuit };

/// Exact dense simulation: 2^n complex amplitudes, qubit q is bit q of the
/// amplitude index. Measurement randomness comes from the state's own
/// counter-based generator, so a run is a pure function of the seed.
class DenseState {
public:
    static constexpr int kDefaultQubitCap = 26;

    /// |0...0> on n qubits.
    DenseState(int n, std::uint64_t rng_seed, int qubit_cap = kDefaultQubitCap);

    /// Amplitude 1 at basis_index, 0 elsewhere.
    static DenseState init_basis(int n, std::uint64_t basis_index,
                                 std::uint64_t rng_seed = 0,
                                 int qubit_cap = kDefaultQubitCap);

    int num_qubits() const { return n_; }
    std::uint64_t dim() const { return std::uint64_t(1) << n_; }

    void apply_h(int q);
    void apply_x(int q);
    void apply_z(int q);
    void apply_cnot(int control, int target);
    void apply_h_all(int start, int width);

    /// Multiply each basis component by (-1)^(s . x) where x is the value of
    /// the register [start, start+|s|). Diagonal mode rewrites phases in one
    /// pass; circuit mode routes the same sign through CNOTs into `ancilla`,
    /// which the caller must have prepared in |->.
    void apply_phase_oracle(int start, const BitVector& s, OracleMode mode,
                            int ancilla = -1);

    /// Collapse qubit q; Born-rule draw from the state's rng.
    int measure(int q);

    /// Measure a register, qubit order ascending (bit i of the result is
    /// qubit start+i). Hadamard basis means conjugate by H around a
    /// computational measurement; + reads as 0, - as 1.
    BitVector measure_register(int start, int width, Basis basis = Basis::computational);

    /// Sample `shots` joint outcomes of the given qubits from the Born
    /// distribution without collapsing. Returns counts indexed by the packed
    /// outcome (positions[i] -> bit i). For shot statistics only; the state
    /// is unchanged.
    std::vector<std::uint64_t> sample_counts(const std::vector<int>& positions,
                                             std::uint64_t shots);

    /// Grow by k fresh |0> qubits; they take the highest indices.
    void add_qubits(int k);

    /// Tensor in another state; its qubit j becomes this->num_qubits()+j.
    /// The absorbed state's generator is dropped.
    void absorb(DenseState&& other);

    double norm_squared() const;
    /// Throws invariant_error if the norm drifted beyond 1e-9.
    void check_norm() const;

    /// |<this|other>|, the global-phase-blind comparison used everywhere.
    double overlap(const DenseState& other) const;

    std::complex<double> amplitude(std::uint64_t index) const { return amps_[index]; }

    /// Debug dump: one "index re im" line per amplitude above the threshold.
    std::string dump(double threshold = 1e-12) const;

    CounterRng& rng() { return rng_; }

private:
    void check_qubit(int q) const;
    void maybe_debug_norm() const;

    int n_;
    int cap_;
    std::vector<std::complex<double>> amps_;
    CounterRng rng_;
};

/// m Bell pairs: 2^(-m/2) sum_x |x>_A |x>_B with BR = [0,m), AR = [m,2m).
/// With an ancilla requested (circuit-mode runs), AQ = {2m} prepared in |->.
DenseState prepare_phi_plus_pairs(int m, std::uint64_t seed, RegisterLayout& layout,
                                  bool with_ancilla = false,
                                  int qubit_cap = DenseState::kDefaultQubitCap);

/// m GHZ triplets: 2^(-m/2) sum_x |x>_A |x>_B |x>_C with AR = [0,m),
/// BR = [m,2m), CR = [2m,3m); BQ, CQ ancillas in |-> when requested.
DenseState prepare_ghz3_triplets(int m, std::uint64_t seed, RegisterLayout& layout,
                                 bool with_ancillas = false,
                                 int qubit_cap = DenseState::kDefaultQubitCap);

} // namespace qsdc
