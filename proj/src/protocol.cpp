#include "qsdc/protocol.hpp"

#include <algorithm>

#include "qsdc/errors.hpp"
#include "qsdc/stats.hpp"

namespace qsdc {

namespace {
constexpr int kValidationStride = 1'000'000;
} // namespace

const char* to_string(Variant v) {
    return v == Variant::two_party ? "2p" : "3p";
}

const char* to_string(Phase p) {
    switch (p) {
    case Phase::initial: return "initial";
    case Phase::distributed: return "distributed";
    case Phase::embedded: return "embedded";
    case Phase::transmitted: return "transmitted";
    case Phase::decoded: return "decoded";
    case Phase::aborted: return "aborted";
    }
    return "?";
}

ProtocolSession::ProtocolSession(SessionConfig config)
    : config_(config),
      system_(config.backend, CounterRng(config.seed).derive(1).next_u64(),
              config.dense_qubit_cap),
      coins_(CounterRng(config.seed).derive(2).next_u64()),
      eve_rng_(CounterRng(config.seed).derive(3).next_u64()),
      secret_(1) {
    if (config_.m < 1) throw dimension_error("message length must be >= 1");
    config_.attack.validate();

    const std::size_t m = static_cast<std::size_t>(config_.m);
    auto fit = [&](const std::optional<BitVector>& v, const char* name) {
        if (v && v->size() != m)
            throw dimension_error(std::string(name) + " length does not match m");
    };
    fit(config_.secret, "secret");
    fit(config_.secret_b, "secret_b");
    fit(config_.secret_c, "secret_c");

    if (config_.variant == Variant::two_party) {
        secret_ = config_.secret ? *config_.secret : BitVector::random(m, coins_);
    } else {
        if (config_.secret_b) secret_b_ = *config_.secret_b;
        if (config_.secret_c) secret_c_ = *config_.secret_c;
        if (!secret_b_ && !secret_c_ && config_.secret) {
            secret_b_ = BitVector::random(m, coins_);
            secret_c_ = *config_.secret ^ *secret_b_;
        }
        if (!secret_b_) secret_b_ = BitVector::random(m, coins_);
        if (!secret_c_) secret_c_ = BitVector::random(m, coins_);
        secret_ = *secret_b_ ^ *secret_c_;
        if (config_.secret && secret_ != *config_.secret)
            throw dimension_error("secret, secret_b and secret_c are inconsistent");
    }
}

const BitVector& ProtocolSession::secret_b() const {
    if (!secret_b_) throw dimension_error("secret_b only exists in three-party runs");
    return *secret_b_;
}

const BitVector& ProtocolSession::secret_c() const {
    if (!secret_c_) throw dimension_error("secret_c only exists in three-party runs");
    return *secret_c_;
}

void ProtocolSession::require_phase(Phase expected, const char* op) const {
    if (phase_ != expected)
        throw phase_error(std::string(op) + " requires phase " + to_string(expected) +
                          ", session is " + to_string(phase_));
}

void ProtocolSession::note(const std::string& event, const std::string& detail) {
    transcript_.push_back({event, detail});
}

bool ProtocolSession::has_register(const std::string& name) const {
    return registers_.count(name) != 0;
}

const std::vector<QubitId>& ProtocolSession::register_ids(const std::string& name) const {
    auto it = registers_.find(name);
    if (it == registers_.end()) throw dimension_error("no register named " + name);
    return it->second;
}

void ProtocolSession::prepare_tuple(const std::vector<QubitId>& tuple) {
    // tuple[0] is the source-kept qubit; fan the entanglement out from it.
    system_.h(tuple[0]);
    for (std::size_t i = 1; i < tuple.size(); ++i) system_.cnot(tuple[0], tuple[i]);
}

void ProtocolSession::distribute() {
    require_phase(Phase::initial, "distribute");
    const int m = config_.m;
    const bool circuit = config_.oracle_mode == OracleMode::circuit;
    const bool pns = config_.attack.strategy == AttackStrategy::pns;

    if (config_.variant == Variant::two_party) {
        const int total = 2 * m + (circuit ? 1 : 0);
        auto ids = system_.alloc_fragment(total);
        registers_["BR"] = {ids.begin(), ids.begin() + m};
        registers_["AR"] = {ids.begin() + m, ids.begin() + 2 * m};
        for (int j = 0; j < m; ++j) {
            system_.h(registers_["AR"][j]);
            system_.cnot(registers_["AR"][j], registers_["BR"][j]);
            if (pns) pns_split_tuple(system_, {registers_["AR"][j], registers_["BR"][j]},
                                     true, eve_);
        }
        if (circuit) {
            registers_["AQ"] = {ids[2 * m]};
            system_.x(ids[2 * m]);
            system_.h(ids[2 * m]);
        }
    } else {
        const int total = 3 * m + (circuit ? 2 : 0);
        auto ids = system_.alloc_fragment(total);
        registers_["AR"] = {ids.begin(), ids.begin() + m};
        registers_["BR"] = {ids.begin() + m, ids.begin() + 2 * m};
        registers_["CR"] = {ids.begin() + 2 * m, ids.begin() + 3 * m};
        for (int j = 0; j < m; ++j) {
            prepare_tuple({registers_["AR"][j], registers_["BR"][j], registers_["CR"][j]});
            if (pns)
                pns_split_tuple(system_,
                                {registers_["AR"][j], registers_["BR"][j],
                                 registers_["CR"][j]},
                                true, eve_);
        }
        if (circuit) {
            registers_["BQ"] = {ids[3 * m]};
            registers_["CQ"] = {ids[3 * m + 1]};
            for (int q : {ids[3 * m], ids[3 * m + 1]}) {
                system_.x(q);
                system_.h(q);
            }
        }
    }

    // Validation tuples for both checkpoints are created and shared now,
    // alongside the data tuples, in their own fragments.
    if (config_.security.enabled) {
        const int arity = config_.variant == Variant::two_party ? 2 : 3;
        const int k = config_.effective_validation();
        for (int cp = 0; cp < 2; ++cp)
            for (int t = 0; t < k; ++t) {
                auto ids = system_.alloc_fragment(arity);
                prepare_tuple(ids);
                if (pns) pns_split_tuple(system_, ids, false, eve_);
                validation_[cp].push_back({ids});
            }
    }

    auto channels = build_leg(Leg::distribution);
    apply_attack(system_, channels, config_.attack, Leg::distribution, eve_rng_, eve_);
    land_leg(Leg::distribution, channels, checkpoint1_);
    checkpoint1_ += run_checkpoint(0);
    note("distributed", std::string("m=") + std::to_string(m));

    if (config_.security.enabled && checkpoint1_.detected()) {
        phase_ = Phase::aborted;
        note("aborted", "checkpoint 1 detected tampering");
        return;
    }
    phase_ = Phase::distributed;
}

std::vector<std::vector<FlyingQubit>> ProtocolSession::build_leg(Leg leg) {
    std::vector<std::vector<FlyingQubit>> channels;
    auto data_channel = [&](const std::string& reg) {
        std::vector<FlyingQubit> seq;
        const auto& ids = registers_[reg];
        for (std::size_t j = 0; j < ids.size(); ++j)
            seq.push_back({ids[j], FlyingQubit::Kind::data, static_cast<int>(j)});
        return seq;
    };

    if (leg == Leg::distribution) {
        // Receiver-bound halves of the data and validation tuples.
        channels.push_back(data_channel("BR"));
        if (config_.variant == Variant::three_party) channels.push_back(data_channel("CR"));
        for (int cp = 0; cp < 2; ++cp)
            for (std::size_t t = 0; t < validation_[cp].size(); ++t)
                for (std::size_t c = 0; c < channels.size(); ++c)
                    channels[c].push_back({validation_[cp][t].qubits[c + 1],
                                           FlyingQubit::Kind::validation,
                                           static_cast<int>(cp * kValidationStride + t)});
    } else {
        // Information-carrying qubits head for the decoder, together with
        // the senders' halves of the second-checkpoint tuples.
        if (config_.variant == Variant::two_party) {
            channels.push_back(data_channel("AR"));
            for (std::size_t t = 0; t < validation_[1].size(); ++t)
                channels[0].push_back({validation_[1][t].qubits[0],
                                       FlyingQubit::Kind::validation,
                                       static_cast<int>(t)});
        } else {
            channels.push_back(data_channel("BR"));
            channels.push_back(data_channel("CR"));
            for (std::size_t t = 0; t < validation_[1].size(); ++t)
                for (std::size_t c = 0; c < 2; ++c)
                    channels[c].push_back({validation_[1][t].qubits[c + 1],
                                           FlyingQubit::Kind::validation,
                                           static_cast<int>(t)});
        }
    }

    // Decoys go in last: d per leg in total, each assigned a channel at
    // random and a uniformly random slot within it, unknown to Eve. A
    // photon-splitting adversary sits at the distribution source and gets a
    // correlated copy of those pulses as well.
    pending_decoys_.clear();
    if (config_.security.enabled) {
        const std::size_t d = static_cast<std::size_t>(config_.effective_decoys());
        std::vector<std::size_t> per_channel(channels.size(), 0);
        for (std::size_t i = 0; i < d; ++i)
            ++per_channel[coins_.next_below(channels.size())];
        for (std::size_t c = 0; c < channels.size(); ++c) {
            auto plan = make_decoy_plan(channels[c].size(), per_channel[c], coins_);
            for (std::size_t i = 0; i < plan.decoys.size(); ++i) {
                const auto& decoy = plan.decoys[i];
                const QubitId id = system_.alloc_fragment(1)[0];
                if (DecoyPlan::prep_value(decoy.prep)) system_.x(id);
                if (DecoyPlan::prep_basis(decoy.prep) == Basis::hadamard) system_.h(id);
                if (config_.attack.strategy == AttackStrategy::pns &&
                    leg == Leg::distribution)
                    pns_split_tuple(system_, {id}, false, eve_);
                channels[c].insert(channels[c].begin() + static_cast<long>(decoy.position),
                                   {id, FlyingQubit::Kind::decoy, static_cast<int>(i)});
                pending_decoys_.push_back({decoy, id});
            }
        }
    }
    return channels;
}

void ProtocolSession::land_leg(Leg leg, std::vector<std::vector<FlyingQubit>>& channels,
                               SecurityReport& report) {
    // Sender discloses decoy slots over the classical channel; the receiver
    // measures whatever arrived in each slot in the preparation basis and
    // compares against the preparation. Decoys then leave the sequence.
    std::size_t decoy_cursor = 0;
    for (const auto& channel : channels)
        for (const auto& item : channel) {
            if (item.kind != FlyingQubit::Kind::decoy) continue;
            const auto& decoy = pending_decoys_[decoy_cursor++].first;
            const int outcome =
                system_.measure_in(item.id, DecoyPlan::prep_basis(decoy.prep));
            ++report.decoys_checked;
            if (outcome != DecoyPlan::prep_value(decoy.prep)) ++report.decoy_mismatches;
        }
    pending_decoys_.clear();

    // Data qubits take their place in the receiver's registers and the
    // validation tuples re-bind their travelled halves; under an
    // intercept-resend attack these ids are Eve's forgeries.
    auto collect = [&](std::size_t channel_index) {
        std::vector<QubitId> ids(config_.m, -1);
        for (const auto& item : channels[channel_index])
            if (item.kind == FlyingQubit::Kind::data) ids[item.index] = item.id;
        return ids;
    };
    for (std::size_t c = 0; c < channels.size(); ++c)
        for (const auto& item : channels[c]) {
            if (item.kind != FlyingQubit::Kind::validation) continue;
            const int cp = leg == Leg::distribution ? item.index / kValidationStride : 1;
            const int t = leg == Leg::distribution ? item.index % kValidationStride
                                                   : item.index;
            // On distribution, channel c carried tuple qubit c+1; on the
            // return leg the two-party sender ships its own kept half.
            const std::size_t slot =
                (leg == Leg::return_leg && config_.variant == Variant::two_party) ? 0
                                                                                  : c + 1;
            validation_[cp][t].qubits[slot] = item.id;
        }

    if (leg == Leg::return_leg) {
        if (config_.variant == Variant::two_party) {
            registers_["BR_A"] = collect(0);
            registers_.erase("AR");
        } else {
            registers_["AR_B"] = collect(0);
            registers_["AR_C"] = collect(1);
            registers_.erase("BR");
            registers_.erase("CR");
        }
    } else {
        registers_["BR"] = collect(0);
        if (config_.variant == Variant::three_party) registers_["CR"] = collect(1);
    }
}

SecurityReport ProtocolSession::run_checkpoint(int which) {
    SecurityReport report;
    if (!config_.security.enabled) return report;
    // Sacrificed tuples: every party measures its half in the Hadamard
    // basis and the X parities are compared in public. Intact tuples have
    // parity 0 always.
    for (const auto& tuple : validation_[which]) {
        int parity = 0;
        for (QubitId q : tuple.qubits) parity ^= system_.measure_in(q, Basis::hadamard);
        ++report.tuples_checked;
        if (parity != 0) ++report.parity_failures;
    }
    validation_[which].clear();
    return report;
}

void ProtocolSession::embed_secret() {
    require_phase(Phase::distributed, "embed_secret");
    const bool circuit = config_.oracle_mode == OracleMode::circuit;
    if (config_.variant == Variant::two_party) {
        system_.apply_phase_oracle(registers_["AR"], secret_, config_.oracle_mode,
                                   circuit ? registers_["AQ"][0] : -1);
    } else {
        system_.apply_phase_oracle(registers_["BR"], *secret_b_, config_.oracle_mode,
                                   circuit ? registers_["BQ"][0] : -1);
        system_.apply_phase_oracle(registers_["CR"], *secret_c_, config_.oracle_mode,
                                   circuit ? registers_["CQ"][0] : -1);
    }
    note("embedded");
    phase_ = Phase::embedded;
}

void ProtocolSession::transmit() {
    require_phase(Phase::embedded, "transmit");
    auto channels = build_leg(Leg::return_leg);
    apply_attack(system_, channels, config_.attack, Leg::return_leg, eve_rng_, eve_);
    land_leg(Leg::return_leg, channels, checkpoint2_);
    checkpoint2_ += run_checkpoint(1);
    note("transmitted");
    if (config_.security.enabled && checkpoint2_.detected()) {
        phase_ = Phase::aborted;
        note("aborted", "checkpoint 2 detected tampering");
        return;
    }
    phase_ = Phase::transmitted;
}

BitVector ProtocolSession::decode() {
    require_phase(Phase::transmitted, "decode");
    BitVector decoded(config_.m);
    if (config_.variant == Variant::two_party) {
        for (QubitId q : registers_["BR"]) system_.h(q);
        for (QubitId q : registers_["BR_A"]) system_.h(q);
        for (int j = 0; j < config_.m; ++j)
            system_.cnot(registers_["BR_A"][j], registers_["BR"][j]);
        decoded = system_.measure_register(registers_["BR"]);
    } else {
        for (const char* reg : {"AR", "AR_B", "AR_C"})
            for (QubitId q : registers_[reg]) system_.h(q);
        for (int j = 0; j < config_.m; ++j)
            system_.cnot(registers_["AR"][j], registers_["AR_B"][j]);
        for (int j = 0; j < config_.m; ++j)
            system_.cnot(registers_["AR_B"][j], registers_["AR_C"][j]);
        decoded = system_.measure_register(registers_["AR_C"]);
    }
    note("decoded", decoded.str());
    phase_ = Phase::decoded;
    finalize_eve();
    return decoded;
}

EntanglementCheckReport verify_hadamard_entanglement(const SessionConfig& config,
                                                     std::uint64_t shots) {
    EntanglementCheckReport report;
    report.shots = shots;
    report.cells = std::size_t(1) << config.m;
    std::vector<std::uint64_t> marginal(report.cells, 0);

    SessionConfig base = config;
    base.security.enabled = false;
    base.attack = AttackConfig{};

    auto regs_of = [](const SessionConfig& cfg) {
        return cfg.variant == Variant::two_party
                   ? std::vector<std::string>{"BR_A", "BR"}
                   : std::vector<std::string>{"AR", "AR_B", "AR_C"};
    };

    if (config.backend == BackendKind::dense) {
        // One state, many Born samples: the post-H state is fixed, so the
        // joint outcome distribution can be sampled without re-running.
        SessionConfig cfg = base;
        ProtocolSession session(cfg);
        session.distribute();
        session.embed_secret();
        session.transmit();
        std::vector<QubitId> all;
        for (const auto& reg : regs_of(cfg))
            for (QubitId q : session.register_ids(reg)) {
                session.system().h(q);
                all.push_back(q);
            }
        auto counts = session.system().sample_counts(all, shots);
        const int m = cfg.m;
        const std::uint64_t mask = (std::uint64_t(1) << m) - 1;
        const int groups = cfg.variant == Variant::two_party ? 2 : 3;
        for (std::uint64_t packed = 0; packed < counts.size(); ++packed) {
            if (counts[packed] == 0) continue;
            std::uint64_t acc = 0;
            for (int g = 0; g < groups; ++g) acc ^= (packed >> (g * m)) & mask;
            if (acc != session.secret().to_uint()) report.violations += counts[packed];
            marginal[packed & mask] += counts[packed];
        }
    } else {
        for (std::uint64_t shot = 0; shot < shots; ++shot) {
            SessionConfig cfg = base;
            cfg.seed = CounterRng(base.seed).derive(shot).next_u64();
            ProtocolSession session(cfg);
            session.distribute();
            session.embed_secret();
            session.transmit();
            BitVector acc = BitVector::zeros(cfg.m);
            bool first = true;
            std::uint64_t first_value = 0;
            for (const auto& reg : regs_of(cfg)) {
                auto outcome =
                    session.system().measure_register(session.register_ids(reg),
                                                      Basis::hadamard);
                if (first) {
                    first_value = outcome.to_uint();
                    first = false;
                }
                acc = acc ^ outcome;
            }
            if (acc != session.secret()) ++report.violations;
            ++marginal[first_value];
        }
    }

    report.chi_square = stats::chi_square_uniform(marginal);
    report.p_value = stats::chi_square_sf(report.chi_square,
                                          static_cast<int>(report.cells) - 1);
    return report;
}

} // namespace qsdc
