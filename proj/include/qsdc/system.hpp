#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qsdc/bitvec.hpp"
#include "qsdc/dense.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/tableau.hpp"

namespace qsdc {

enum class BackendKind { dense, stabilizer };

using QubitId = std::int32_t;

/// A collection of independent state fragments behind one qubit-id space.
/// Product subsystems (decoy qubits, sacrificed validation tuples, an
/// adversary's private tuples) live in their own fragments, so the main
/// register state stays at the width the protocol actually entangles. A
/// two-qubit gate across fragments merges them first; ids remain stable
/// through merges. Each fragment draws measurement randomness from its own
/// derived stream, so runs are reproducible regardless of thread scheduling.
class QuantumSystem {
public:
    QuantumSystem(BackendKind kind, std::uint64_t seed,
                  int dense_qubit_cap = DenseState::kDefaultQubitCap);

    BackendKind kind() const { return kind_; }
    bool is_dense() const { return kind_ == BackendKind::dense; }

    /// Fresh |0...0> fragment; returns the new ids in qubit order.
    std::vector<QubitId> alloc_fragment(int count);

    void h(QubitId q);
    void x(QubitId q);
    void z(QubitId q);
    void cnot(QubitId control, QubitId target);

    int measure(QubitId q);
    int measure_in(QubitId q, Basis basis);
    /// Bit i of the result comes from qs[i]; measured in listed order.
    BitVector measure_register(const std::vector<QubitId>& qs,
                               Basis basis = Basis::computational);

    /// (-1)^(s . x) on the listed register qubits. Diagonal mode prefers the
    /// fragment-level single pass when the register is contiguous in one
    /// dense fragment, and degrades to per-qubit Z otherwise (same unitary).
    /// Circuit mode kicks the phase back through CNOTs into `ancilla`.
    void apply_phase_oracle(const std::vector<QubitId>& reg, const BitVector& s,
                            OracleMode mode, QubitId ancilla = -1);

    /// Born sampling of joint outcomes without collapse (dense only; all
    /// listed qubits must share one fragment).
    std::vector<std::uint64_t> sample_counts(const std::vector<QubitId>& qs,
                                             std::uint64_t shots);

    int fragment_count() const;
    int fragment_width(QubitId q) const;
    bool same_fragment(QubitId a, QubitId b) const;
    /// Dense fragment holding q (read-only), nullptr on the stabilizer side.
    const DenseState* dense_fragment(QubitId q) const;

private:
    struct Fragment {
        std::unique_ptr<DenseState> dense;
        std::unique_ptr<StabilizerTableau> tableau;
        std::vector<QubitId> members; // members[local] = id
        int width() const;
    };

    struct Slot {
        std::int32_t frag;
        std::int32_t local;
    };

    Fragment& frag_of(QubitId q);
    const Fragment& frag_of(QubitId q) const;
    int local_of(QubitId q) const;
    /// Merge fragment b into fragment a (b's qubits move to the top indices).
    void merge(std::int32_t a, std::int32_t b);
    /// Ensure both ids share a fragment; returns the shared fragment index.
    std::int32_t entangle_fragments(QubitId a, QubitId b);
    void check_id(QubitId q) const;

    BackendKind kind_;
    int dense_cap_;
    CounterRng master_;
    std::uint64_t fragment_serial_ = 0;
    std::vector<Fragment> fragments_;
    std::vector<Slot> slots_;
};

} // namespace qsdc
