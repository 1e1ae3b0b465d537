#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsdc/protocol.hpp"

namespace qsdc {

/// Batch configuration: one protocol setting plus trial count, seeding and
/// output options. Everything that influences results is serialized into the
/// report's config echo; output path and thread count deliberately are not.
struct RunConfig {
    Variant variant = Variant::two_party;
    int m = 4;
    BackendKind backend = BackendKind::stabilizer;
    OracleMode oracle_mode = OracleMode::diagonal;
    bool security_enabled = true;
    int decoys = -1;       // per channel per leg; -1 = ceil(m/4)
    int validate_k = -1;   // tuples per checkpoint; -1 = ceil(m/4)
    AttackStrategy attack = AttackStrategy::none;
    Leg leg = Leg::return_leg;
    bool eve_random_basis = false;
    std::optional<BitVector> secret;
    std::optional<BitVector> secret_b;
    std::optional<BitVector> secret_c;
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    int dense_qubit_cap = DenseState::kDefaultQubitCap;
    bool include_transcripts = false;
    bool emit_timing = false;

    // Not part of the report echo.
    int threads = 0; // 0 = hardware choice
    std::string out;

    void validate() const;
    SessionConfig session_config(std::uint64_t trial_index) const;

    bool operator==(const RunConfig& other) const;
};

struct TrialRecord {
    std::uint64_t index = 0;
    std::string secret;
    std::string secret_b; // empty outside three-party runs
    std::string secret_c;
    bool aborted = false;
    bool detected = false;
    bool decoded_valid = false;
    std::string decoded; // empty when the run aborted
    bool correct = false;
    SecurityReport checkpoint1;
    SecurityReport checkpoint2;
    std::string eve_bits; // adversary's final record, empty without an attack
    std::vector<TranscriptEvent> transcript; // only with include_transcripts

    bool operator==(const TrialRecord& other) const;
};

struct RunAggregate {
    std::uint64_t decode_attempts = 0;
    std::uint64_t decode_successes = 0;
    double decode_success_rate = 0.0;
    std::uint64_t detected_runs = 0;
    double detection_rate = 0.0;
    std::uint64_t aborted_runs = 0;
    std::optional<double> wall_ms; // present only when timing was requested

    bool operator==(const RunAggregate& other) const;
};

struct RunReport {
    static constexpr const char* kSchema = "qsdc.run-report/1";
    std::string schema = kSchema;
    RunConfig config;
    std::vector<TrialRecord> trials;
    RunAggregate aggregate;

    /// Rebuild the aggregate block from the per-trial records.
    void recompute_aggregate();

    bool operator==(const RunReport& other) const;
};

/// Stable JSON rendering (sorted keys, fixed layout): equal reports render to
/// equal bytes, which is what the determinism contract is checked against.
std::string emit_report(const RunReport& report);
RunReport parse_report(const std::string& text);

// Enum <-> string helpers shared by the report schema and the CLI.
Variant parse_variant(const std::string& s);
BackendKind parse_backend(const std::string& s);
OracleMode parse_oracle_mode(const std::string& s);
AttackStrategy parse_attack(const std::string& s);
Leg parse_leg(const std::string& s);
const char* to_string(BackendKind k);
const char* to_string(OracleMode m);
const char* to_string(Basis b);

} // namespace qsdc
