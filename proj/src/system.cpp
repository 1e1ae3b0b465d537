#include "qsdc/system.hpp"

#include <algorithm>

#include "qsdc/errors.hpp"

namespace qsdc {

int QuantumSystem::Fragment::width() const {
    return dense ? dense->num_qubits() : tableau->num_qubits();
}

QuantumSystem::QuantumSystem(BackendKind kind, std::uint64_t seed, int dense_qubit_cap)
    : kind_(kind), dense_cap_(dense_qubit_cap), master_(seed) {}

std::vector<QubitId> QuantumSystem::alloc_fragment(int count) {
    if (count < 1) throw dimension_error("fragment needs at least one qubit");
    Fragment frag;
    const std::uint64_t frag_seed = master_.derive(fragment_serial_++).next_u64();
    if (kind_ == BackendKind::dense)
        frag.dense = std::make_unique<DenseState>(count, frag_seed, dense_cap_);
    else
        frag.tableau = std::make_unique<StabilizerTableau>(count, frag_seed);

    std::vector<QubitId> ids(count);
    const std::int32_t findex = static_cast<std::int32_t>(fragments_.size());
    for (int i = 0; i < count; ++i) {
        const QubitId id = static_cast<QubitId>(slots_.size());
        slots_.push_back({findex, i});
        frag.members.push_back(id);
        ids[i] = id;
    }
    fragments_.push_back(std::move(frag));
    return ids;
}

void QuantumSystem::check_id(QubitId q) const {
    if (q < 0 || static_cast<std::size_t>(q) >= slots_.size())
        throw dimension_error("unknown qubit id");
}

QuantumSystem::Fragment& QuantumSystem::frag_of(QubitId q) {
    check_id(q);
    return fragments_[slots_[q].frag];
}

const QuantumSystem::Fragment& QuantumSystem::frag_of(QubitId q) const {
    check_id(q);
    return fragments_[slots_[q].frag];
}

int QuantumSystem::local_of(QubitId q) const {
    check_id(q);
    return slots_[q].local;
}

void QuantumSystem::merge(std::int32_t a, std::int32_t b) {
    Fragment& fa = fragments_[a];
    Fragment& fb = fragments_[b];
    const int base = fa.width();
    if (kind_ == BackendKind::dense)
        fa.dense->absorb(std::move(*fb.dense));
    else
        fa.tableau->absorb(std::move(*fb.tableau));
    for (std::size_t i = 0; i < fb.members.size(); ++i) {
        const QubitId id = fb.members[i];
        slots_[id] = {a, base + static_cast<int>(i)};
        fa.members.push_back(id);
    }
    fb.dense.reset();
    fb.tableau.reset();
    fb.members.clear();
}

std::int32_t QuantumSystem::entangle_fragments(QubitId a, QubitId b) {
    check_id(a);
    check_id(b);
    std::int32_t fa = slots_[a].frag, fb = slots_[b].frag;
    if (fa == fb) return fa;
    // Keep the bigger fragment in place; absorbing into it is cheaper.
    if (fragments_[fa].width() < fragments_[fb].width()) std::swap(fa, fb);
    merge(fa, fb);
    return fa;
}

void QuantumSystem::h(QubitId q) {
    auto& f = frag_of(q);
    if (f.dense) f.dense->apply_h(local_of(q));
    else f.tableau->apply_h(local_of(q));
}

void QuantumSystem::x(QubitId q) {
    auto& f = frag_of(q);
    if (f.dense) f.dense->apply_x(local_of(q));
    else f.tableau->apply_x(local_of(q));
}

void QuantumSystem::z(QubitId q) {
    auto& f = frag_of(q);
    if (f.dense) f.dense->apply_z(local_of(q));
    else f.tableau->apply_z(local_of(q));
}

void QuantumSystem::cnot(QubitId control, QubitId target) {
    entangle_fragments(control, target);
    auto& f = frag_of(control);
    if (f.dense) f.dense->apply_cnot(local_of(control), local_of(target));
    else f.tableau->apply_cnot(local_of(control), local_of(target));
}

int QuantumSystem::measure(QubitId q) {
    auto& f = frag_of(q);
    return f.dense ? f.dense->measure(local_of(q)) : f.tableau->measure(local_of(q));
}

int QuantumSystem::measure_in(QubitId q, Basis basis) {
    if (basis == Basis::hadamard) h(q);
    const int outcome = measure(q);
    if (basis == Basis::hadamard) h(q);
    return outcome;
}

BitVector QuantumSystem::measure_register(const std::vector<QubitId>& qs, Basis basis) {
    if (qs.empty()) throw dimension_error("empty register");
    std::string text(qs.size(), '0');
    for (std::size_t i = 0; i < qs.size(); ++i)
        if (measure_in(qs[i], basis)) text[qs.size() - 1 - i] = '1';
    return BitVector::parse(text);
}

void QuantumSystem::apply_phase_oracle(const std::vector<QubitId>& reg, const BitVector& s,
                                       OracleMode mode, QubitId ancilla) {
    if (reg.size() != s.size())
        throw dimension_error("secret length does not match register width");
    if (mode == OracleMode::circuit) {
        check_id(ancilla);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s.bit(i)) cnot(reg[i], ancilla);
        return;
    }
    if (is_dense() && !reg.empty()) {
        // Single-pass diagonal update when the register is contiguous in one
        // dense fragment (the unattacked main-line case).
        const std::int32_t f = slots_[reg[0]].frag;
        bool contiguous = true;
        for (std::size_t i = 0; i < reg.size() && contiguous; ++i)
            contiguous = slots_[reg[i]].frag == f &&
                         slots_[reg[i]].local == slots_[reg[0]].local + static_cast<int>(i);
        if (contiguous) {
            fragments_[f].dense->apply_phase_oracle(slots_[reg[0]].local, s,
                                                    OracleMode::diagonal);
            return;
        }
    }
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.bit(i)) z(reg[i]);
}

std::vector<std::uint64_t> QuantumSystem::sample_counts(const std::vector<QubitId>& qs,
                                                        std::uint64_t shots) {
    if (!is_dense()) throw dimension_error("sampling without collapse is dense-only");
    if (qs.empty()) throw dimension_error("empty register");
    const std::int32_t f = slots_[qs[0]].frag;
    std::vector<int> locals;
    for (QubitId q : qs) {
        check_id(q);
        if (slots_[q].frag != f)
            throw dimension_error("sampled qubits must share one fragment");
        locals.push_back(slots_[q].local);
    }
    return fragments_[f].dense->sample_counts(locals, shots);
}

int QuantumSystem::fragment_count() const {
    int live = 0;
    for (const auto& f : fragments_)
        if (f.dense || f.tableau) ++live;
    return live;
}

int QuantumSystem::fragment_width(QubitId q) const { return frag_of(q).width(); }

bool QuantumSystem::same_fragment(QubitId a, QubitId b) const {
    check_id(a);
    check_id(b);
    return slots_[a].frag == slots_[b].frag;
}

const DenseState* QuantumSystem::dense_fragment(QubitId q) const {
    return frag_of(q).dense.get();
}

} // namespace qsdc
