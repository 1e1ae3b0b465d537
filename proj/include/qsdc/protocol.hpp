#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsdc/adversary.hpp"
#include "qsdc/bitvec.hpp"
#include "qsdc/system.hpp"

namespace qsdc {

enum class Variant { two_party, three_party };
enum class Phase { initial, distributed, embedded, transmitted, decoded, aborted };

const char* to_string(Variant v);
const char* to_string(Phase p);

struct SecurityConfig {
    bool enabled = true;
    /// Decoys per channel per leg; -1 means ceil(m/4).
    int decoys = -1;
    /// Tuples sacrificed per validation checkpoint; -1 means ceil(m/4).
    int validation_tuples = -1;
};

struct SessionConfig {
    Variant variant = Variant::two_party;
    int m = 4;
    BackendKind backend = BackendKind::stabilizer;
    OracleMode oracle_mode = OracleMode::diagonal;
    std::uint64_t seed = 1;
    SecurityConfig security;
    AttackConfig attack;
    int dense_qubit_cap = DenseState::kDefaultQubitCap;
    /// Explicit secrets; absent entries are drawn from the session seed.
    /// Two-party runs use `secret`. Three-party runs use secret_b/secret_c;
    /// giving only `secret` there picks a random split of it.
    std::optional<BitVector> secret;
    std::optional<BitVector> secret_b;
    std::optional<BitVector> secret_c;

    int effective_decoys() const {
        return security.decoys >= 0 ? security.decoys : (m + 3) / 4;
    }
    int effective_validation() const {
        return security.validation_tuples >= 0 ? security.validation_tuples : (m + 3) / 4;
    }
};

struct TranscriptEvent {
    std::string event;
    std::string detail;
};

/// One protocol run, phase-ordered: distribute -> embed_secret -> transmit ->
/// decode. Security checkpoints run at the end of distribution and at the
/// end of transmission; a detection flips the session to aborted and the
/// later phases refuse to run. Registers are lists of system qubit ids, so
/// transmission is ownership relabeling, never amplitude copying, and an
/// adversary swap shows up as the register pointing at different ids.
class ProtocolSession {
public:
    explicit ProtocolSession(SessionConfig config);

    void distribute();
    void embed_secret();
    void transmit();
    BitVector decode();

    Phase phase() const { return phase_; }
    bool aborted() const { return phase_ == Phase::aborted; }
    const SessionConfig& config() const { return config_; }

    /// The target secret: s for two parties, s_B xor s_C for three.
    const BitVector& secret() const { return secret_; }
    const BitVector& secret_b() const;
    const BitVector& secret_c() const;

    const SecurityReport& checkpoint1() const { return checkpoint1_; }
    const SecurityReport& checkpoint2() const { return checkpoint2_; }
    bool detected() const { return checkpoint1_.detected() || checkpoint2_.detected(); }

    QuantumSystem& system() { return system_; }
    EveRecords& eve() { return eve_; }
    /// Measures Eve's withheld qubits; called automatically by decode, and by
    /// the batch driver when a run aborts first.
    void finalize_eve() { eve_.finalize(system_); }

    bool has_register(const std::string& name) const;
    const std::vector<QubitId>& register_ids(const std::string& name) const;

    const std::vector<TranscriptEvent>& transcript() const { return transcript_; }

private:
    struct ValidationTuple {
        std::vector<QubitId> qubits; // source-kept half first
    };

    void require_phase(Phase expected, const char* op) const;
    void note(const std::string& event, const std::string& detail = "");
    std::vector<std::vector<FlyingQubit>> build_leg(Leg leg);
    void land_leg(Leg leg, std::vector<std::vector<FlyingQubit>>& channels,
                  SecurityReport& report);
    SecurityReport run_checkpoint(int which);
    void prepare_tuple(const std::vector<QubitId>& tuple);

    SessionConfig config_;
    QuantumSystem system_;
    CounterRng coins_;   // secrets, decoy plans
    CounterRng eve_rng_; // adversary's own choices
    Phase phase_ = Phase::initial;

    BitVector secret_;
    std::optional<BitVector> secret_b_;
    std::optional<BitVector> secret_c_;

    std::map<std::string, std::vector<QubitId>> registers_;
    std::vector<ValidationTuple> validation_[2]; // per checkpoint
    std::vector<std::pair<DecoyPlan::Decoy, QubitId>> pending_decoys_;
    SecurityReport checkpoint1_;
    SecurityReport checkpoint2_;
    EveRecords eve_;
    std::vector<TranscriptEvent> transcript_;
};

/// Samples the post-H point of the decryption circuit: all data registers
/// measured, outcomes must XOR to the secret on every shot, and the first
/// register's marginal is chi-square-tested against uniform.
struct EntanglementCheckReport {
    std::uint64_t shots = 0;
    std::uint64_t violations = 0;
    double chi_square = 0.0;
    double p_value = 1.0;
    std::size_t cells = 0;
};

EntanglementCheckReport verify_hadamard_entanglement(const SessionConfig& config,
                                                     std::uint64_t shots);

} // namespace qsdc
