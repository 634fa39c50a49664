#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ghzsim/spectrum.hpp"
#include "oracles.hpp"

using namespace ghzsim;

TEST_CASE("spectrum near zero tunneling approaches the bare subspace energies") {
    const double j = 25.0;
    const auto rows = sweep_spectrum(j, {j / 200.0});
    const double expected[8] = {-2, -2, 0, 0, 0, 0, 2, 2};
    for (int k = 0; k < 8; ++k)
        CHECK(std::abs(rows[0].evals_over_j[k] - expected[k]) <= 0.01);
    CHECK(rows[0].fid_6th_ghz_pi >= 0.999);
    CHECK(rows[0].fid_7th_ghz_0 >= 0.999);
    CHECK(rows[0].fid_ground_flip_pi >= 0.999);
    CHECK(rows[0].fid_1st_flip_0 >= 0.999);
}

TEST_CASE("fidelities stay high and start near one at small tunneling") {
    const double j = 25.0;
    const auto rows = sweep_spectrum(j, {j / 20.0, j / 10.0, j / 6.0, j / 4.0});
    CHECK(rows[0].fid_6th_ghz_pi >= 0.97);
    CHECK(rows[0].fid_7th_ghz_0 >= 0.97);
    for (const auto& r : rows) {
        CHECK(r.fid_6th_ghz_pi >= 0.95);
        CHECK(r.fid_7th_ghz_0 >= 0.9);
        CHECK(r.fid_6th_ghz_pi <= 1.0 + 1e-9);
        CHECK(r.fid_7th_ghz_0 <= 1.0 + 1e-9);
    }
}

TEST_CASE("eigenvalues are Lipschitz continuous across the sweep") {
    const double j = 25.0;
    const int n = 100;
    std::vector<double> deltas(n);
    for (int i = 0; i < n; ++i) deltas[i] = (j / 2.0) * (i + 1) / n;
    const double step = deltas[1] - deltas[0];
    REQUIRE(step <= j / 200.0);

    const auto rows = sweep_spectrum(j, deltas);
    for (size_t i = 1; i < rows.size(); ++i)
        for (int k = 0; k < 8; ++k) {
            const double diff = std::abs(rows[i].evals_over_j[k] - rows[i - 1].evals_over_j[k]) * j;
            CHECK(diff <= 5.0 * step);
        }
}

TEST_CASE("spectrum is invariant under the global spin flip") {
    const double j = 25.0;
    for (double delta : {j / 10.0, j / 3.0}) {
        QubitParams p;
        p.delta = {delta, delta, delta};
        p.j12 = j;
        p.j23 = j;
        const ComplexMatrix h = build_h3(p);
        const ComplexMatrix flip =
            op_on_qubit(1, pauli_x()) * op_on_qubit(2, pauli_x()) * op_on_qubit(3, pauli_x());
        const ComplexMatrix h_flipped = flip * h * flip.adjoint();
        const auto e1 = hermitian_eig(h).eigenvalues;
        const auto e2 = hermitian_eig(h_flipped).eigenvalues;
        for (int k = 0; k < 8; ++k) CHECK(std::abs(e1[k] - e2[k]) <= 1e-10);
    }
}

TEST_CASE("pair assignment never improves by swapping the references") {
    const double j = 25.0;
    const PureState g0 = ghz_state(0.0);
    const PureState gpi = ghz_state(M_PI);
    for (double delta : {j / 50.0, j / 6.0, j / 2.0}) {
        QubitParams p;
        p.delta = {delta, delta, delta};
        p.j12 = j;
        p.j23 = j;
        const EigenDecomposition ed = hermitian_eig(build_h3(p));
        auto overlap2 = [&](const PureState& ref, int col) {
            Complex s = 0.0;
            for (int i = 0; i < 8; ++i)
                s += std::conj(ref.amplitudes[i]) * ed.eigenvectors(i, col);
            return std::norm(s);
        };
        const double direct = overlap2(gpi, 6) + overlap2(g0, 7);
        const double swapped = overlap2(g0, 6) + overlap2(gpi, 7);
        CHECK(direct >= swapped - 1e-3);
        const auto rows = sweep_spectrum(j, {delta});
        CHECK(rows[0].fid_6th_ghz_pi + rows[0].fid_7th_ghz_0 ==
              doctest::Approx(std::max(direct, swapped)).epsilon(1e-10));
    }
}

TEST_CASE("sweep input validation") {
    CHECK_THROWS_AS(sweep_spectrum(25.0, {1.0, 0.5}), ValidationError);   // not ascending
    CHECK_THROWS_AS(sweep_spectrum(25.0, {-1.0}), ValidationError);       // not positive
    CHECK_THROWS_AS(formation_time_sweep(25.0, {0.0}), ValidationError);  // not positive
}

TEST_CASE("formation-time rows agree with the formula at small tunneling") {
    const double j = 25.0;
    const auto rows = formation_time_sweep(j, {j / 10.0, j / 6.0});
    for (const auto& r : rows) {
        CHECK(std::abs(r.t_exact - r.t_formula) / r.t_formula <= 0.15);
        CHECK(r.peak_fidelity >= 0.99);
    }
    CHECK(rows[0].t_exact >= 17.0);
    CHECK(rows[0].t_exact <= 24.0);
}

TEST_CASE("peak fidelity declines as the tunneling grows") {
    const double j = 25.0;
    const auto rows = formation_time_sweep(j, {j / 10.0, j / 6.0, j / 4.0, j / 2.0});
    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].peak_fidelity < rows[i - 1].peak_fidelity);
    CHECK(rows.back().peak_fidelity >= 0.85);
}
