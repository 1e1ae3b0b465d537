#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "qsdc/dense.hpp"
#include "qsdc/errors.hpp"

using namespace qsdc;

namespace {

constexpr double kTol = 1e-9;

double overlap_with(const DenseState& state, const std::vector<std::complex<double>>& ref) {
    std::complex<double> ip = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i)
        ip += std::conj(ref[i]) * state.amplitude(i);
    return std::abs(ip);
}

} // namespace

TEST_CASE("init_basis places a single amplitude") {
    auto s0 = DenseState::init_basis(1, 0);
    CHECK(std::abs(s0.amplitude(0) - 1.0) < kTol);
    auto s3 = DenseState::init_basis(2, 3);
    CHECK(std::abs(s3.amplitude(3) - 1.0) < kTol);
    auto s5 = DenseState::init_basis(3, 5);
    CHECK(std::abs(s5.amplitude(5) - 1.0) < kTol);
    CHECK_THROWS_AS(DenseState::init_basis(2, 4), dimension_error);
    CHECK_THROWS_AS(DenseState(30, 0), resource_error);
}

TEST_CASE("hadamard maps |0> to |+> and |1> to |->") {
    auto plus = DenseState::init_basis(1, 0);
    plus.apply_h(0);
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(plus.amplitude(0) - inv) < kTol);
    CHECK(std::abs(plus.amplitude(1) - inv) < kTol);

    auto minus = DenseState::init_basis(1, 1);
    minus.apply_h(0);
    CHECK(std::abs(minus.amplitude(0) - inv) < kTol);
    CHECK(std::abs(minus.amplitude(1) + inv) < kTol);
}

TEST_CASE("m-fold hadamard of |x> matches the sign-enumeration oracle") {
    // Expected amplitude on |z> is 2^(-m/2) (-1)^(z.x), evaluated directly.
    for (int m = 1; m <= 6; ++m) {
        for (std::uint64_t x = 0; x < (std::uint64_t(1) << m); ++x) {
            auto state = DenseState::init_basis(m, x);
            state.apply_h_all(0, m);
            const double mag = std::pow(2.0, -0.5 * m);
            for (std::uint64_t z = 0; z < state.dim(); ++z) {
                const double expected = (std::popcount(z & x) & 1) ? -mag : mag;
                CHECK(std::abs(state.amplitude(z) - expected) < kTol);
            }
        }
    }
}

TEST_CASE("H squared is the identity") {
    CounterRng rng(99);
    auto s = DenseState::init_basis(4, 9, rng.next_u64());
    s.apply_h_all(0, 4); // spread it out first
    std::vector<std::complex<double>> before(s.dim());
    for (std::uint64_t i = 0; i < s.dim(); ++i) before[i] = s.amplitude(i);
    s.apply_h(2);
    s.apply_h(2);
    CHECK(overlap_with(s, before) == doctest::Approx(1.0).epsilon(kTol));
    s.check_norm();
}

TEST_CASE("cnot on basis states and involution") {
    // control = qubit 1, target = qubit 0: |10> -> |11>
    auto s = DenseState::init_basis(2, 0b10);
    s.apply_cnot(1, 0);
    CHECK(std::abs(s.amplitude(0b11) - 1.0) < kTol);

    // inactive control leaves |0x> alone
    auto idle = DenseState::init_basis(2, 0b01);
    idle.apply_cnot(1, 0);
    CHECK(std::abs(idle.amplitude(0b01) - 1.0) < kTol);

    CHECK_THROWS_AS(s.apply_cnot(1, 1), dimension_error);

    auto mixed = DenseState::init_basis(3, 5);
    mixed.apply_h_all(0, 3);
    mixed.apply_z(1);
    std::vector<std::complex<double>> before(mixed.dim());
    for (std::uint64_t i = 0; i < mixed.dim(); ++i) before[i] = mixed.amplitude(i);
    mixed.apply_cnot(2, 0);
    mixed.apply_cnot(2, 0);
    CHECK(overlap_with(mixed, before) == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("phase oracle: zero secret is the identity") {
    auto s = DenseState::init_basis(3, 0);
    s.apply_h_all(0, 3);
    std::vector<std::complex<double>> before(s.dim());
    for (std::uint64_t i = 0; i < s.dim(); ++i) before[i] = s.amplitude(i);
    s.apply_phase_oracle(0, BitVector::zeros(3), OracleMode::diagonal);
    CHECK(overlap_with(s, before) == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("phase oracle: s=1 on a uniform single qubit gives |->") {
    auto s = DenseState::init_basis(1, 0);
    s.apply_h(0);
    s.apply_phase_oracle(0, BitVector::parse("1"), OracleMode::diagonal);
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitude(0) - inv) < kTol);
    CHECK(std::abs(s.amplitude(1) + inv) < kTol);
}

TEST_CASE("phase oracle: diagonal and circuit modes agree") {
    CounterRng rng(1234);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 4;
        // Random 4-qubit register state built from gates, plus |-> ancilla.
        auto a = DenseState::init_basis(m + 1, 0, rng.next_u64());
        a.apply_x(m);
        a.apply_h(m); // ancilla |-> at qubit m
        for (int q = 0; q < m; ++q) {
            a.apply_h(q);
            if (rng.next_bit()) a.apply_z(q);
        }
        for (int q = 0; q + 1 < m; ++q)
            if (rng.next_bit()) a.apply_cnot(q, q + 1);
        auto b = a; // same pre-oracle state

        auto secret = BitVector::random(m, rng);
        a.apply_phase_oracle(0, secret, OracleMode::diagonal);
        b.apply_phase_oracle(0, secret, OracleMode::circuit, m);
        CHECK(a.overlap(b) >= 1.0 - kTol);
    }
}

TEST_CASE("bell pair and ghz3 preparation") {
    RegisterLayout layout;
    auto pair = prepare_phi_plus_pairs(1, 7, layout);
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(pair.amplitude(0b00) - inv) < kTol);
    CHECK(std::abs(pair.amplitude(0b11) - inv) < kTol);
    CHECK(layout.at("BR").start == 0);
    CHECK(layout.at("AR").start == 1);

    auto ghz = prepare_ghz3_triplets(1, 7, layout);
    CHECK(std::abs(ghz.amplitude(0b000) - inv) < kTol);
    CHECK(std::abs(ghz.amplitude(0b111) - inv) < kTol);

    // m = 2: amplitude 1/2 on every aligned pair of register values.
    auto two = prepare_phi_plus_pairs(2, 7, layout);
    for (std::uint64_t x = 0; x < 4; ++x)
        CHECK(std::abs(two.amplitude(x | (x << 2)) - 0.5) < kTol);
    CHECK(two.norm_squared() == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("measurement collapses and repeats") {
    auto s = DenseState::init_basis(2, 0b11);
    auto outcome = s.measure_register(0, 2);
    CHECK(outcome.str() == "11");

    auto plus = DenseState::init_basis(1, 0);
    plus.apply_h(0);
    CHECK(plus.measure_register(0, 1, Basis::hadamard).str() == "0");

    // Both halves of a Bell pair always agree.
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RegisterLayout layout;
        auto pair = prepare_phi_plus_pairs(3, seed, layout);
        auto b = pair.measure_register(layout.at("BR").start, 3);
        auto a = pair.measure_register(layout.at("AR").start, 3);
        CHECK(a == b);
    }
}

TEST_CASE("sampling matches the collapsed distribution shape") {
    RegisterLayout layout;
    auto pair = prepare_phi_plus_pairs(2, 5, layout);
    auto counts = pair.sample_counts({0, 1, 2, 3}, 4000);
    std::uint64_t diag = 0;
    for (std::uint64_t x = 0; x < 4; ++x) diag += counts[x | (x << 2)];
    CHECK(diag == 4000); // only aligned outcomes occur
}

TEST_CASE("absorb and add_qubits grow the state") {
    auto a = DenseState::init_basis(1, 1, 3); // |1>
    auto b = DenseState::init_basis(1, 0, 4); // |0>
    b.apply_h(0);
    a.absorb(std::move(b)); // qubit0 = |1>, qubit1 = |+>
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(a.amplitude(0b01) - inv) < kTol);
    CHECK(std::abs(a.amplitude(0b11) - inv) < kTol);
    a.add_qubits(1);
    CHECK(a.num_qubits() == 3);
    CHECK(std::abs(a.amplitude(0b001) - inv) < kTol);
    a.check_norm();
}

TEST_CASE("debug dump lists only significant amplitudes") {
    RegisterLayout layout;
    auto pair = prepare_phi_plus_pairs(1, 3, layout);
    const auto text = pair.dump();
    CHECK(text == "0 0.707107 0\n3 0.707107 0\n");
}

TEST_CASE("register layout enforces disjoint exact cover") {
    RegisterLayout layout;
    layout.add("A", 0, 2);
    layout.add("B", 2, 1);
    layout.validate(3);
    CHECK(layout.at("A").width == 2);
    CHECK_THROWS_AS(layout.validate(4), invariant_error); // uncovered qubit
    layout.add("C", 1, 2); // overlaps A and B
    CHECK_THROWS_AS(layout.validate(3), invariant_error);
    layout.rename("A", "A2");
    CHECK(layout.has("A2"));
    CHECK_THROWS_AS(layout.at("A"), dimension_error);
}

TEST_CASE("norm is preserved through a long gate sequence") {
    CounterRng rng(17);
    auto s = DenseState::init_basis(5, 13, rng.next_u64());
    for (int step = 0; step < 200; ++step) {
        const int q = static_cast<int>(rng.next_below(5));
        switch (rng.next_below(4)) {
        case 0: s.apply_h(q); break;
        case 1: s.apply_x(q); break;
        case 2: s.apply_z(q); break;
        default: s.apply_cnot(q, (q + 1) % 5); break;
        }
    }
    s.check_norm();
}
