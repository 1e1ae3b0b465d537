#include <doctest.h>

#include <cstdint>
#include <vector>

#include "qsdc/dense.hpp"
#include "qsdc/errors.hpp"
#include "qsdc/tableau.hpp"

using namespace qsdc;

namespace {

struct GateOp {
    enum Kind { H, X, Z, CNOT } kind;
    int a;
    int b;
};

std::vector<GateOp> random_clifford_circuit(int n, int len, CounterRng& rng) {
    std::vector<GateOp> ops;
    for (int i = 0; i < len; ++i) {
        const int q = static_cast<int>(rng.next_below(n));
        switch (rng.next_below(4)) {
        case 0: ops.push_back({GateOp::H, q, 0}); break;
        case 1: ops.push_back({GateOp::X, q, 0}); break;
        case 2: ops.push_back({GateOp::Z, q, 0}); break;
        default: {
            int t = static_cast<int>(rng.next_below(n - 1));
            if (t >= q) ++t;
            ops.push_back({GateOp::CNOT, q, t});
            break;
        }
        }
    }
    return ops;
}

template <typename State>
void run_circuit(State& state, const std::vector<GateOp>& ops) {
    for (const auto& op : ops) {
        switch (op.kind) {
        case GateOp::H: state.apply_h(op.a); break;
        case GateOp::X: state.apply_x(op.a); break;
        case GateOp::Z: state.apply_z(op.a); break;
        case GateOp::CNOT: state.apply_cnot(op.a, op.b); break;
        }
    }
}

} // namespace

TEST_CASE("basis prep and deterministic measurement") {
    StabilizerTableau t(2, 1);
    t.apply_x(0);
    CHECK(t.measure(0) == 1);
    CHECK(t.measure(1) == 0);
    CHECK(t.measure(0) == 1); // repeatable
    t.check_invariants();
}

TEST_CASE("H then measure is a fair coin, and collapse sticks") {
    int ones = 0;
    const int shots = 2000;
    for (int i = 0; i < shots; ++i) {
        StabilizerTableau t(1, 1000 + i);
        t.apply_h(0);
        const int first = t.measure(0);
        ones += first;
        CHECK(t.measure(0) == first);
    }
    CHECK(ones > shots / 2 - 3 * 25); // 3 sigma around 1000 (sigma ~ 22)
    CHECK(ones < shots / 2 + 3 * 25);
}

TEST_CASE("Z flips |+> to |->") {
    // Dense backend agrees: H Z H |0> = |1>.
    StabilizerTableau t(1, 5);
    t.apply_h(0);
    t.apply_z(0);
    t.apply_h(0);
    CHECK(t.measure(0) == 1);

    auto d = DenseState::init_basis(1, 0);
    d.apply_h(0);
    d.apply_z(0);
    d.apply_h(0);
    CHECK(d.measure(0) == 1);
}

TEST_CASE("bell pair correlation is perfect") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        StabilizerTableau t(2, seed);
        t.apply_h(1);
        t.apply_cnot(1, 0);
        CHECK(t.measure(0) == t.measure(1));
    }
}

TEST_CASE("phase oracle via Z matches dense diagonal oracle outcomes") {
    // (|0>+|1>)/sqrt2 per qubit, oracle s, then H: deterministically |s>.
    CounterRng rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 5;
        auto s = BitVector::random(m, rng);

        StabilizerTableau tab(m, rng.next_u64());
        tab.apply_h_all(0, m);
        tab.apply_phase_oracle(0, s, OracleMode::diagonal);
        tab.apply_h_all(0, m);
        CHECK(tab.measure_register(0, m) == s);

        auto dense = DenseState::init_basis(m, 0, rng.next_u64());
        dense.apply_h_all(0, m);
        dense.apply_phase_oracle(0, s, OracleMode::diagonal);
        dense.apply_h_all(0, m);
        CHECK(dense.measure_register(0, m) == s);
    }
}

TEST_CASE("random circuits: deterministic outcomes match the dense backend") {
    CounterRng rng(7);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 4;
        auto ops = random_clifford_circuit(n, 30, rng);
        StabilizerTableau tab(n, 1);
        DenseState dense(n, 1);
        run_circuit(tab, ops);
        run_circuit(dense, ops);
        tab.check_invariants();

        // Compare per-qubit outcome supports: a qubit is deterministic in
        // the tableau iff its dense one-bit marginal is 0 or 1.
        for (int q = 0; q < n; ++q) {
            double p1 = 0.0;
            for (std::uint64_t i = 0; i < dense.dim(); ++i)
                if ((i >> q) & 1) p1 += std::norm(dense.amplitude(i));
            auto clone = tab; // measuring mutates
            const int outcome = clone.measure(q);
            if (p1 < 1e-12) CHECK(outcome == 0);
            else if (p1 > 1.0 - 1e-12) CHECK(outcome == 1);
        }
    }
}

TEST_CASE("random circuits: measured register distributions agree") {
    // Empirical joint distribution over all qubits, tableau vs dense sampling.
    CounterRng rng(21);
    for (int rep = 0; rep < 4; ++rep) {
        const int n = 3;
        auto ops = random_clifford_circuit(n, 25, rng);
        const int shots = 4000;

        std::vector<std::uint64_t> tab_counts(1 << n, 0);
        for (int shot = 0; shot < shots; ++shot) {
            StabilizerTableau tab(n, 100000 + shot);
            run_circuit(tab, ops);
            ++tab_counts[tab.measure_register(0, n).to_uint()];
        }

        DenseState dense(n, rng.next_u64());
        run_circuit(dense, ops);
        auto dense_counts = dense.sample_counts({0, 1, 2}, shots);

        double tv = 0.0;
        for (std::size_t k = 0; k < tab_counts.size(); ++k)
            tv += std::abs(double(tab_counts[k]) - double(dense_counts[k])) / shots;
        CHECK(tv / 2 < 0.05);
    }
}

TEST_CASE("absorb forms the product state") {
    StabilizerTableau a(1, 3);
    a.apply_x(0); // |1>
    StabilizerTableau b(2, 4);
    b.apply_h(1);
    b.apply_cnot(1, 0); // bell pair
    a.absorb(std::move(b));
    CHECK(a.num_qubits() == 3);
    a.check_invariants();
    CHECK(a.measure(0) == 1);
    CHECK(a.measure(1) == a.measure(2));
}

TEST_CASE("add_qubits keeps existing state intact") {
    StabilizerTableau t(2, 9);
    t.apply_h(1);
    t.apply_cnot(1, 0);
    t.add_qubits(3);
    CHECK(t.num_qubits() == 5);
    t.check_invariants();
    CHECK(t.measure(3) == 0);
    CHECK(t.measure(0) == t.measure(1));
}

TEST_CASE("full protocol shape at m=4: decoded secret is exact") {
    // Bell pairs, oracle s = 1010 on the A side, H everywhere, CNOT A->B,
    // measure B. The stabilizer run must reproduce the dense result.
    const auto s = BitVector::parse("1010");
    const int m = 4;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        StabilizerTableau tab(2 * m, seed);
        DenseState dense(2 * m, seed);
        auto run = [&](auto& st) {
            for (int j = 0; j < m; ++j) {
                st.apply_h(m + j);
                st.apply_cnot(m + j, j);
            }
            st.apply_phase_oracle(m, s, OracleMode::diagonal);
            st.apply_h_all(0, 2 * m);
            for (int j = 0; j < m; ++j) st.apply_cnot(m + j, j);
            return st.measure_register(0, m);
        };
        CHECK(run(tab) == s);
        CHECK(run(dense) == s);
    }
}

TEST_CASE("index errors") {
    StabilizerTableau t(2, 0);
    CHECK_THROWS_AS(t.apply_h(2), dimension_error);
    CHECK_THROWS_AS(t.apply_cnot(0, 0), dimension_error);
    CHECK_THROWS_AS(t.measure(-1), dimension_error);
}
