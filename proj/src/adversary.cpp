#include "qsdc/adversary.hpp"

#include <algorithm>

#include "qsdc/errors.hpp"

namespace qsdc {

const char* to_string(AttackStrategy s) {
    switch (s) {
    case AttackStrategy::none: return "none";
    case AttackStrategy::measure_resend: return "measure_resend";
    case AttackStrategy::intercept_resend_fake: return "intercept_resend_fake";
    case AttackStrategy::entangle_measure: return "entangle_measure";
    case AttackStrategy::pns: return "pns";
    }
    return "?";
}

const char* to_string(Leg leg) {
    return leg == Leg::distribution ? "distribution" : "return";
}

void AttackConfig::validate() const {
    if ((strategy == AttackStrategy::entangle_measure || strategy == AttackStrategy::pns) &&
        leg == Leg::distribution)
        throw dimension_error(std::string(to_string(strategy)) +
                              " is only modeled on the return leg");
}

DecoyPlan make_decoy_plan(std::size_t base_len, std::size_t d, CounterRng& rng) {
    DecoyPlan plan;
    if (d == 0) return plan;
    const std::size_t total = base_len + d;
    // Floyd's sampling gives a uniform d-subset of [0, total).
    std::vector<std::size_t> chosen;
    for (std::size_t j = total - d; j < total; ++j) {
        std::size_t t = rng.next_below(j + 1);
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
            chosen.push_back(t);
        else
            chosen.push_back(j);
    }
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t pos : chosen)
        plan.decoys.push_back({static_cast<int>(rng.next_below(4)), pos});
    return plan;
}

void EveRecords::finalize(QuantumSystem& system) {
    if (finalized) return;
    for (const auto& h : held) {
        const int bit = system.measure_in(h.id, h.basis);
        if (h.is_data) bits.push_back(bit);
    }
    held.clear();
    finalized = true;
}

namespace {

void attack_measure_resend(QuantumSystem& system,
                           std::vector<std::vector<FlyingQubit>>& channels,
                           CounterRng& eve_rng, bool random_basis, EveRecords& eve) {
    for (auto& channel : channels)
        for (auto& item : channel) {
            const Basis basis = (random_basis && eve_rng.next_bit())
                                    ? Basis::hadamard
                                    : Basis::computational;
            const int bit = system.measure_in(item.id, basis);
            if (item.kind == FlyingQubit::Kind::data) eve.bits.push_back(bit);
        }
}

void attack_intercept_fake(QuantumSystem& system,
                           std::vector<std::vector<FlyingQubit>>& channels,
                           EveRecords& eve) {
    std::size_t slots = 0;
    for (const auto& c : channels) slots = std::max(slots, c.size());
    for (std::size_t slot = 0; slot < slots; ++slot) {
        // One fresh tuple per slot, arity matched to the channels that still
        // have an item there; Eve keeps qubit 0 and forwards the rest in
        // place of the intercepted qubits, which she stores.
        std::vector<std::size_t> present;
        for (std::size_t c = 0; c < channels.size(); ++c)
            if (slot < channels[c].size()) present.push_back(c);
        auto fake = system.alloc_fragment(static_cast<int>(present.size()) + 1);
        system.h(fake[0]);
        for (std::size_t q = 1; q < fake.size(); ++q) system.cnot(fake[0], fake[q]);
        for (std::size_t i = 0; i < present.size(); ++i) {
            auto& item = channels[present[i]][slot];
            eve.held.push_back({item.id, item.kind == FlyingQubit::Kind::data,
                                Basis::hadamard});
            item.id = fake[1 + i];
        }
    }
}

void attack_entangle_measure(QuantumSystem& system,
                             std::vector<std::vector<FlyingQubit>>& channels,
                             EveRecords& eve) {
    for (auto& channel : channels)
        for (auto& item : channel) {
            const QubitId ancilla = system.alloc_fragment(1)[0];
            system.cnot(item.id, ancilla);
            eve.held.push_back({ancilla, item.kind == FlyingQubit::Kind::data,
                                Basis::computational});
        }
}

} // namespace

void apply_attack(QuantumSystem& system, std::vector<std::vector<FlyingQubit>>& channels,
                  const AttackConfig& attack, Leg current_leg, CounterRng& eve_rng,
                  EveRecords& eve) {
    if (!attack.active_on(current_leg)) return;
    switch (attack.strategy) {
    case AttackStrategy::measure_resend:
        attack_measure_resend(system, channels, eve_rng, attack.eve_random_basis, eve);
        break;
    case AttackStrategy::intercept_resend_fake:
        attack_intercept_fake(system, channels, eve);
        break;
    case AttackStrategy::entangle_measure:
        attack_entangle_measure(system, channels, eve);
        break;
    case AttackStrategy::pns:
        // Split at the source during distribution, nothing to do in flight.
        break;
    case AttackStrategy::none:
        break;
    }
}

void pns_split_tuple(QuantumSystem& system, const std::vector<QubitId>& tuple,
                     bool is_data, EveRecords& eve) {
    const QubitId extra = system.alloc_fragment(1)[0];
    system.cnot(tuple.front(), extra);
    eve.held.push_back({extra, is_data, Basis::computational});
}

} // namespace qsdc
