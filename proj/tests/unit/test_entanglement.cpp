#include <doctest.h>

#include <cmath>

#include "ghzsim/entanglement.hpp"
#include "oracles.hpp"

using namespace ghzsim;

namespace {

PureState w_state() {
    PureState s;
    const double a = 1.0 / std::sqrt(3.0);
    s.amplitudes[1] = a;  // 001
    s.amplitudes[2] = a;  // 010
    s.amplitudes[4] = a;  // 100
    return s;
}

PureState bell_on_12() {
    PureState s;
    const double a = 1.0 / std::sqrt(2.0);
    s.amplitudes[0] = a;  // |00>|0>
    s.amplitudes[6] = a;  // |11>|0>
    return s;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& rho) {
    return u * rho * u.adjoint();
}

}  // namespace

TEST_CASE("fidelity basics") {
    const PureState target = ghz_state(-M_PI / 2);
    CHECK(fidelity(target.density(), target) == doctest::Approx(1.0));

    const ComplexMatrix rho000 = basis_state("000").density();
    for (double phi : {0.0, 0.7, -2.0})
        CHECK(fidelity(rho000, ghz_state(phi)) == doctest::Approx(0.5));
}

TEST_CASE("fidelity is linear in rho and target-phase invariant") {
    oracles::Rng rng(31);
    const ComplexMatrix a = oracles::random_pure_state(rng).density();
    const ComplexMatrix b = oracles::random_pure_state(rng).density();
    const PureState t = oracles::random_pure_state(rng);
    ComplexMatrix mix = a;
    mix *= Complex(0.3, 0.0);
    ComplexMatrix b7 = b;
    b7 *= Complex(0.7, 0.0);
    mix += b7;
    CHECK(fidelity(mix, t) ==
          doctest::Approx(0.3 * fidelity(a, t) + 0.7 * fidelity(b, t)).epsilon(1e-12));

    PureState t_phased = t;
    for (auto& c : t_phased.amplitudes) c *= std::polar(1.0, 1.234);
    CHECK(fidelity(a, t_phased) == doctest::Approx(fidelity(a, t)).epsilon(1e-12));
}

TEST_CASE("one-to-rest tangle on product, GHZ and W states") {
    CHECK(tau_one_to_rest(basis_state("000").density(), 1) == doctest::Approx(0.0));
    for (int pivot : {1, 2, 3})
        CHECK(tau_one_to_rest(ghz_state(0.4).density(), pivot) == doctest::Approx(1.0));
    CHECK(tau_one_to_rest(w_state().density(), 1) == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("pair tangle on Bell, GHZ and maximally mixed states") {
    CHECK(tau_pair(bell_on_12().density(), 1, 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tau_pair(ghz_state(0.0).density(), 1, 2) == doctest::Approx(0.0));
    CHECK(tau_pair(w_state().density(), 1, 2) == doctest::Approx(4.0 / 9.0).epsilon(1e-9));

    // On the rank-4 maximally mixed reduced state every square-root
    // eigenvalue is 1/4, so the two-largest formula evaluates to
    // Tr(rho rho~) - 2 l1 l2 = 1/4 - 1/8 = 1/8; the formula is exact only on
    // the rank-2 reductions of pure states and overestimates beyond them.
    ComplexMatrix mixed = ComplexMatrix::identity(8);
    mixed *= Complex(0.125, 0.0);
    CHECK(tau_pair(mixed, 1, 2) == doctest::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("pair tangle ignores local unitaries on the traced-out qubit") {
    oracles::Rng rng(55);
    for (int trial = 0; trial < 8; ++trial) {
        const PureState psi = oracles::random_pure_state(rng);
        const ComplexMatrix rho = psi.density();
        const ComplexMatrix u3 = op_on_qubit(3, oracles::random_unitary2(rng));
        const double before = tau_pair(rho, 1, 2);
        const double after = tau_pair(conjugate_by(u3, rho), 1, 2);
        CHECK(after == doctest::Approx(before).epsilon(1e-8));
    }
}

TEST_CASE("pair tangle is symmetric in its qubit pair") {
    oracles::Rng rng(56);
    const ComplexMatrix rho = oracles::random_pure_state(rng).density();
    CHECK(tau_pair(rho, 1, 2) == doctest::Approx(tau_pair(rho, 2, 1)).epsilon(1e-12));
}

TEST_CASE("tangle report on the reference states") {
    for (double phi : {0.0, -M_PI / 2, 2.2}) {
        const TangleReport rep = tangle_report(ghz_state(phi).density());
        CHECK(rep.tau3 == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rep.tau2 <= 1e-10);
    }

    const TangleReport zeros = tangle_report(basis_state("000").density());
    CHECK(zeros.tau_one_to_rest <= 1e-10);
    CHECK(zeros.tau_ab <= 1e-10);
    CHECK(zeros.tau_ac <= 1e-10);
    CHECK(zeros.tau3 <= 1e-10);
    CHECK(zeros.tau2 <= 1e-10);

    const TangleReport w = tangle_report(w_state().density());
    CHECK(w.tau3 <= 1e-9);
    CHECK(w.tau_ab == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
    CHECK(w.tau_ac == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
    CHECK(w.tau2 == doctest::Approx(8.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("GHZ and FLIP give identical reports (SLOCC equivalence)") {
    const ComplexMatrix x2 = op_on_qubit(2, pauli_x());
    for (double phi : {0.0, 1.3}) {
        const ComplexMatrix rho = ghz_state(phi).density();
        const TangleReport a = tangle_report(rho);
        const TangleReport b = tangle_report(conjugate_by(x2, rho));
        CHECK(b.tau3 == doctest::Approx(a.tau3).epsilon(1e-10));
        CHECK(b.tau2 == doctest::Approx(a.tau2).epsilon(1e-10));
        CHECK(b.tau_one_to_rest == doctest::Approx(a.tau_one_to_rest).epsilon(1e-10));
    }
}

TEST_CASE("pure product states carry no tangle") {
    oracles::Rng rng(60);
    for (int trial = 0; trial < 10; ++trial) {
        // random product state from three single-qubit states
        std::array<Complex, 2> q[3];
        for (auto& qb : q) {
            qb = {rng.cnormal(), rng.cnormal()};
            const double n = std::sqrt(std::norm(qb[0]) + std::norm(qb[1]));
            qb[0] /= n;
            qb[1] /= n;
        }
        PureState psi;
        for (int i = 0; i < 8; ++i)
            psi.amplitudes[i] = q[0][(i >> 2) & 1] * q[1][(i >> 1) & 1] * q[2][i & 1];
        const TangleReport rep = tangle_report(psi.density());
        CHECK(rep.tau_one_to_rest <= 1e-10);
        CHECK(rep.tau_ab <= 1e-10);
        CHECK(rep.tau_ac <= 1e-10);
        CHECK(rep.tau3 <= 1e-10);
        CHECK(rep.tau2 <= 1e-10);
    }
}

TEST_CASE("three-tangle matches the Cayley hyperdeterminant oracle") {
    oracles::Rng rng(123);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const PureState psi = oracles::random_pure_state(rng);
        const TangleReport rep = tangle_report(psi.density());
        worst = std::max(worst, std::abs(rep.tau3 - oracles::cayley_tau3(psi.amplitudes)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("pure-state tau3 is pivot independent") {
    oracles::Rng rng(321);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = oracles::random_pure_state(rng).density();
        const double t1 = tangle_report(rho, 1).tau3;
        CHECK(tangle_report(rho, 2).tau3 == doctest::Approx(t1).epsilon(1e-8));
        CHECK(tangle_report(rho, 3).tau3 == doctest::Approx(t1).epsilon(1e-8));
    }
}
