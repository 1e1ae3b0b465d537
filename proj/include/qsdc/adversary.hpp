#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsdc/rng.hpp"
#include "qsdc/system.hpp"

namespace qsdc {

enum class Leg { distribution, return_leg };

enum class AttackStrategy {
    none,
    measure_resend,        // measure every intercepted qubit, forward the collapse
    intercept_resend_fake, // keep the originals, forward halves of fresh tuples
    entangle_measure,      // copy each intercepted qubit into a kept ancilla
    pns                    // extra correlated qubit per tuple, split at the source
};

const char* to_string(AttackStrategy s);
const char* to_string(Leg leg);

struct AttackConfig {
    AttackStrategy strategy = AttackStrategy::none;
    Leg leg = Leg::return_leg;
    /// Measure-resend only: pick Z or X per qubit instead of always Z.
    bool eve_random_basis = false;

    bool active_on(Leg current) const {
        return strategy != AttackStrategy::none && leg == current;
    }

    /// Strategy/leg pairs outside the threat model are config errors:
    /// measure-resend and intercept-resend run on either leg, the
    /// entangling attacks only on the return leg (the photon-split variant
    /// acts at the source but belongs to the return-phase enumeration).
    void validate() const;
};

/// One decoy qubit: its preparation and its slot in the final sequence.
/// Preparations 0,1 are the Z basis states, 2,3 are |+> and |->.
struct DecoyPlan {
    struct Decoy {
        int prep = 0;
        std::size_t position = 0;
    };
    std::vector<Decoy> decoys;

    static int prep_value(int prep) { return prep & 1; }
    static Basis prep_basis(int prep) {
        return prep < 2 ? Basis::computational : Basis::hadamard;
    }
};

/// Uniformly random d-subset of positions in a sequence of base_len + d
/// items, preparations uniform over the four decoy states.
DecoyPlan make_decoy_plan(std::size_t base_len, std::size_t d, CounterRng& rng);

/// Outcome of one checkpoint: decoy comparison plus tuple-parity validation.
/// Zero tolerance: any mismatch or parity failure flags the run.
struct SecurityReport {
    std::uint64_t decoys_checked = 0;
    std::uint64_t decoy_mismatches = 0;
    std::uint64_t tuples_checked = 0;
    std::uint64_t parity_failures = 0;

    bool detected() const { return decoy_mismatches + parity_failures > 0; }

    SecurityReport& operator+=(const SecurityReport& other) {
        decoys_checked += other.decoys_checked;
        decoy_mismatches += other.decoy_mismatches;
        tuples_checked += other.tuples_checked;
        parity_failures += other.parity_failures;
        return *this;
    }
};

/// One qubit in flight on a channel. Eve sees only the order, never the kind.
struct FlyingQubit {
    enum class Kind { data, validation, decoy };
    QubitId id = -1;
    Kind kind = Kind::data;
    int index = 0; // data position, validation tuple number, or decoy number
};

/// Everything Eve accumulates over a run. Qubits she keeps are measured when
/// the run ends (finalize); only bits tied to data positions enter `bits`,
/// in a deterministic channel-major order, which is the record the
/// information-theoretic tests correlate with the secret.
struct EveRecords {
    struct HeldQubit {
        QubitId id = -1;
        bool is_data = false;
        Basis basis = Basis::computational;
    };

    std::vector<int> bits;
    std::vector<HeldQubit> held;
    bool finalized = false;

    void finalize(QuantumSystem& system);
};

/// Apply the configured attack to the channels of one transmission leg.
/// Channels must be slot-aligned (equal lengths); intercept-resend forges one
/// fresh tuple of arity channels+1 per slot and forwards its halves, which is
/// why alignment matters. Sequences are edited in place (forged ids swap in).
void apply_attack(QuantumSystem& system, std::vector<std::vector<FlyingQubit>>& channels,
                  const AttackConfig& attack, Leg current_leg, CounterRng& eve_rng,
                  EveRecords& eve);

/// Photon-number-splitting hook, applied at the source: one extra qubit,
/// copied out of the tuple's first qubit, retained by Eve. Valid for any
/// tuple arity including single decoy qubits.
void pns_split_tuple(QuantumSystem& system, const std::vector<QubitId>& tuple,
                     bool is_data, EveRecords& eve);

} // namespace qsdc
