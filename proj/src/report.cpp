#include "qsdc/report.hpp"

#include <json.hpp>

#include "qsdc/errors.hpp"

namespace qsdc {

using nlohmann::json;

void RunConfig::validate() const {
    if (m < 1) throw dimension_error("m must be >= 1");
    if (trials < 1) throw dimension_error("trials must be >= 1");
    if (decoys < -1 || validate_k < -1)
        throw dimension_error("decoys/validate_k must be -1 (auto) or >= 0");
    AttackConfig att{attack, leg, eve_random_basis};
    att.validate();
    session_config(0); // secret shape checks
}

SessionConfig RunConfig::session_config(std::uint64_t trial_index) const {
    SessionConfig cfg;
    cfg.variant = variant;
    cfg.m = m;
    cfg.backend = backend;
    cfg.oracle_mode = oracle_mode;
    cfg.seed = CounterRng(seed).derive(trial_index).next_u64();
    cfg.security.enabled = security_enabled;
    cfg.security.decoys = decoys;
    cfg.security.validation_tuples = validate_k;
    cfg.attack = AttackConfig{attack, leg, eve_random_basis};
    cfg.dense_qubit_cap = dense_qubit_cap;
    cfg.secret = secret;
    cfg.secret_b = secret_b;
    cfg.secret_c = secret_c;
    if (variant == Variant::two_party && (secret_b || secret_c))
        throw dimension_error("secret_b/secret_c only apply to three-party runs");
    auto fit = [&](const std::optional<BitVector>& v, const char* name) {
        if (v && v->size() != static_cast<std::size_t>(m))
            throw dimension_error(std::string(name) + " length does not match m");
    };
    fit(secret, "secret");
    fit(secret_b, "secret_b");
    fit(secret_c, "secret_c");
    return cfg;
}

bool RunConfig::operator==(const RunConfig& other) const {
    return variant == other.variant && m == other.m && backend == other.backend &&
           oracle_mode == other.oracle_mode && security_enabled == other.security_enabled &&
           decoys == other.decoys && validate_k == other.validate_k &&
           attack == other.attack && leg == other.leg &&
           eve_random_basis == other.eve_random_basis && secret == other.secret &&
           secret_b == other.secret_b && secret_c == other.secret_c &&
           trials == other.trials && seed == other.seed &&
           dense_qubit_cap == other.dense_qubit_cap &&
           include_transcripts == other.include_transcripts &&
           emit_timing == other.emit_timing;
}

bool TrialRecord::operator==(const TrialRecord& other) const {
    auto events_equal = [&] {
        if (transcript.size() != other.transcript.size()) return false;
        for (std::size_t i = 0; i < transcript.size(); ++i)
            if (transcript[i].event != other.transcript[i].event ||
                transcript[i].detail != other.transcript[i].detail)
                return false;
        return true;
    };
    auto sec_equal = [](const SecurityReport& a, const SecurityReport& b) {
        return a.decoys_checked == b.decoys_checked &&
               a.decoy_mismatches == b.decoy_mismatches &&
               a.tuples_checked == b.tuples_checked &&
               a.parity_failures == b.parity_failures;
    };
    return index == other.index && secret == other.secret && secret_b == other.secret_b &&
           secret_c == other.secret_c && aborted == other.aborted &&
           detected == other.detected && decoded_valid == other.decoded_valid &&
           decoded == other.decoded && correct == other.correct &&
           sec_equal(checkpoint1, other.checkpoint1) &&
           sec_equal(checkpoint2, other.checkpoint2) && eve_bits == other.eve_bits &&
           events_equal();
}

bool RunAggregate::operator==(const RunAggregate& other) const {
    return decode_attempts == other.decode_attempts &&
           decode_successes == other.decode_successes &&
           decode_success_rate == other.decode_success_rate &&
           detected_runs == other.detected_runs &&
           detection_rate == other.detection_rate && aborted_runs == other.aborted_runs &&
           wall_ms == other.wall_ms;
}

bool RunReport::operator==(const RunReport& other) const {
    return schema == other.schema && config == other.config && trials == other.trials &&
           aggregate == other.aggregate;
}

void RunReport::recompute_aggregate() {
    auto wall = aggregate.wall_ms;
    aggregate = RunAggregate{};
    aggregate.wall_ms = wall;
    for (const auto& t : trials) {
        if (t.aborted) ++aggregate.aborted_runs;
        if (t.detected) ++aggregate.detected_runs;
        if (t.decoded_valid) {
            ++aggregate.decode_attempts;
            if (t.correct) ++aggregate.decode_successes;
        }
    }
    aggregate.decode_success_rate =
        aggregate.decode_attempts
            ? double(aggregate.decode_successes) / double(aggregate.decode_attempts)
            : 0.0;
    aggregate.detection_rate =
        trials.empty() ? 0.0 : double(aggregate.detected_runs) / double(trials.size());
}

namespace {

json security_to_json(const SecurityReport& s) {
    return json{{"decoys_checked", s.decoys_checked},
                {"decoy_mismatches", s.decoy_mismatches},
                {"tuples_checked", s.tuples_checked},
                {"parity_failures", s.parity_failures},
                {"detected", s.detected()}};
}

SecurityReport security_from_json(const json& j) {
    SecurityReport s;
    s.decoys_checked = j.at("decoys_checked").get<std::uint64_t>();
    s.decoy_mismatches = j.at("decoy_mismatches").get<std::uint64_t>();
    s.tuples_checked = j.at("tuples_checked").get<std::uint64_t>();
    s.parity_failures = j.at("parity_failures").get<std::uint64_t>();
    return s;
}

json config_to_json(const RunConfig& c) {
    json j{{"variant", to_string(c.variant)},
           {"m", c.m},
           {"backend", to_string(c.backend)},
           {"oracle_mode", to_string(c.oracle_mode)},
           {"security", c.security_enabled},
           {"decoys", c.decoys},
           {"validate_k", c.validate_k},
           {"attack", to_string(c.attack)},
           {"leg", to_string(c.leg)},
           {"eve_random_basis", c.eve_random_basis},
           {"trials", c.trials},
           {"seed", c.seed},
           {"dense_qubit_cap", c.dense_qubit_cap},
           {"include_transcripts", c.include_transcripts},
           {"emit_timing", c.emit_timing}};
    if (c.secret) j["secret"] = c.secret->str();
    if (c.secret_b) j["secret_b"] = c.secret_b->str();
    if (c.secret_c) j["secret_c"] = c.secret_c->str();
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.variant = parse_variant(j.at("variant").get<std::string>());
    c.m = j.at("m").get<int>();
    c.backend = parse_backend(j.at("backend").get<std::string>());
    c.oracle_mode = parse_oracle_mode(j.at("oracle_mode").get<std::string>());
    c.security_enabled = j.at("security").get<bool>();
    c.decoys = j.at("decoys").get<int>();
    c.validate_k = j.at("validate_k").get<int>();
    c.attack = parse_attack(j.at("attack").get<std::string>());
    c.leg = parse_leg(j.at("leg").get<std::string>());
    c.eve_random_basis = j.at("eve_random_basis").get<bool>();
    c.trials = j.at("trials").get<std::uint64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.dense_qubit_cap = j.at("dense_qubit_cap").get<int>();
    c.include_transcripts = j.at("include_transcripts").get<bool>();
    c.emit_timing = j.at("emit_timing").get<bool>();
    if (j.contains("secret")) c.secret = BitVector::parse(j["secret"].get<std::string>());
    if (j.contains("secret_b"))
        c.secret_b = BitVector::parse(j["secret_b"].get<std::string>());
    if (j.contains("secret_c"))
        c.secret_c = BitVector::parse(j["secret_c"].get<std::string>());
    return c;
}

json trial_to_json(const TrialRecord& t) {
    json j{{"index", t.index},
           {"secret", t.secret},
           {"aborted", t.aborted},
           {"detected", t.detected},
           {"decoded_valid", t.decoded_valid},
           {"decoded", t.decoded},
           {"correct", t.correct},
           {"checkpoint1", security_to_json(t.checkpoint1)},
           {"checkpoint2", security_to_json(t.checkpoint2)},
           {"eve_bits", t.eve_bits}};
    if (!t.secret_b.empty()) j["secret_b"] = t.secret_b;
    if (!t.secret_c.empty()) j["secret_c"] = t.secret_c;
    if (!t.transcript.empty()) {
        json events = json::array();
        for (const auto& e : t.transcript)
            events.push_back(json{{"event", e.event}, {"detail", e.detail}});
        j["transcript"] = events;
    }
    return j;
}

TrialRecord trial_from_json(const json& j) {
    TrialRecord t;
    t.index = j.at("index").get<std::uint64_t>();
    t.secret = j.at("secret").get<std::string>();
    t.secret_b = j.value("secret_b", "");
    t.secret_c = j.value("secret_c", "");
    t.aborted = j.at("aborted").get<bool>();
    t.detected = j.at("detected").get<bool>();
    t.decoded_valid = j.at("decoded_valid").get<bool>();
    t.decoded = j.at("decoded").get<std::string>();
    t.correct = j.at("correct").get<bool>();
    t.checkpoint1 = security_from_json(j.at("checkpoint1"));
    t.checkpoint2 = security_from_json(j.at("checkpoint2"));
    t.eve_bits = j.at("eve_bits").get<std::string>();
    if (j.contains("transcript"))
        for (const auto& e : j["transcript"])
            t.transcript.push_back({e.at("event").get<std::string>(),
                                    e.at("detail").get<std::string>()});
    return t;
}

} // namespace

std::string emit_report(const RunReport& report) {
    json j;
    j["schema"] = report.schema;
    j["config"] = config_to_json(report.config);
    json trials = json::array();
    for (const auto& t : report.trials) trials.push_back(trial_to_json(t));
    j["trials"] = trials;
    json agg{{"decode_attempts", report.aggregate.decode_attempts},
             {"decode_successes", report.aggregate.decode_successes},
             {"decode_success_rate", report.aggregate.decode_success_rate},
             {"detected_runs", report.aggregate.detected_runs},
             {"detection_rate", report.aggregate.detection_rate},
             {"aborted_runs", report.aggregate.aborted_runs}};
    if (report.aggregate.wall_ms) agg["wall_ms"] = *report.aggregate.wall_ms;
    j["aggregate"] = agg;
    return j.dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
    json j = json::parse(text);
    RunReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != RunReport::kSchema)
        throw dimension_error("unsupported report schema " + r.schema);
    r.config = config_from_json(j.at("config"));
    for (const auto& t : j.at("trials")) r.trials.push_back(trial_from_json(t));
    const auto& agg = j.at("aggregate");
    r.aggregate.decode_attempts = agg.at("decode_attempts").get<std::uint64_t>();
    r.aggregate.decode_successes = agg.at("decode_successes").get<std::uint64_t>();
    r.aggregate.decode_success_rate = agg.at("decode_success_rate").get<double>();
    r.aggregate.detected_runs = agg.at("detected_runs").get<std::uint64_t>();
    r.aggregate.detection_rate = agg.at("detection_rate").get<double>();
    r.aggregate.aborted_runs = agg.at("aborted_runs").get<std::uint64_t>();
    if (agg.contains("wall_ms")) r.aggregate.wall_ms = agg["wall_ms"].get<double>();
    return r;
}

Variant parse_variant(const std::string& s) {
    if (s == "2p") return Variant::two_party;
    if (s == "3p") return Variant::three_party;
    throw dimension_error("unknown variant " + s);
}

BackendKind parse_backend(const std::string& s) {
    if (s == "dense") return BackendKind::dense;
    if (s == "stabilizer") return BackendKind::stabilizer;
    throw dimension_error("unknown backend " + s);
}

OracleMode parse_oracle_mode(const std::string& s) {
    if (s == "diagonal") return OracleMode::diagonal;
    if (s == "circuit") return OracleMode::circuit;
    throw dimension_error("unknown oracle mode " + s);
}

AttackStrategy parse_attack(const std::string& s) {
    if (s == "none") return AttackStrategy::none;
    if (s == "measure_resend") return AttackStrategy::measure_resend;
    if (s == "intercept_resend_fake") return AttackStrategy::intercept_resend_fake;
    if (s == "entangle_measure") return AttackStrategy::entangle_measure;
    if (s == "pns") return AttackStrategy::pns;
    throw dimension_error("unknown attack " + s);
}

Leg parse_leg(const std::string& s) {
    if (s == "distribution") return Leg::distribution;
    if (s == "return") return Leg::return_leg;
    throw dimension_error("unknown leg " + s);
}

const char* to_string(BackendKind k) {
    return k == BackendKind::dense ? "dense" : "stabilizer";
}

const char* to_string(OracleMode m) {
    return m == OracleMode::diagonal ? "diagonal" : "circuit";
}

const char* to_string(Basis b) {
    return b == Basis::computational ? "computational" : "hadamard";
}

} // namespace qsdc
