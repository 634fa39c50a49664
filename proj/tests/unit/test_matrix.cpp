#include <doctest.h>

#include "ghzsim/matrix.hpp"
#include "ghzsim/model.hpp"
#include "oracles.hpp"

using namespace ghzsim;

namespace {

ComplexMatrix diag_matrix(std::initializer_list<double> vals) {
    ComplexMatrix m(static_cast<int>(vals.size()));
    int i = 0;
    for (double v : vals) m(i, i) = v, ++i;
    return m;
}

}  // namespace

TEST_CASE("kron identity and Pauli products") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i4 = kron(i2, i2);
    CHECK(frobenius_distance(i4, ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix zz = kron(pauli_z(), pauli_z());
    CHECK(zz(0, 0) == Complex(1.0));
    CHECK(zz(1, 1) == Complex(-1.0));
    CHECK(zz(2, 2) == Complex(-1.0));
    CHECK(zz(3, 3) == Complex(1.0));

    // sigma_x on the first factor flips |00> -> |10>
    const ComplexMatrix xi = kron(pauli_x(), i2);
    CHECK(xi(2, 0) == Complex(1.0));
    CHECK(xi(0, 0) == Complex(0.0));
}

TEST_CASE("kron associativity is exact on integer matrices") {
    oracles::Rng rng(11);
    ComplexMatrix a(2), b(2), c(3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            a(i, j) = std::floor(5 * rng.uniform());
            b(i, j) = std::floor(5 * rng.uniform());
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c(i, j) = std::floor(5 * rng.uniform());
    const ComplexMatrix left = kron(kron(a, b), c);
    const ComplexMatrix right = kron(a, kron(b, c));
    CHECK(frobenius_distance(left, right) == 0.0);
}

TEST_CASE("hermitian_eig on diagonal and Pauli inputs") {
    const EigenDecomposition d = hermitian_eig(diag_matrix({3, 1, 2}));
    CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));

    const EigenDecomposition x = hermitian_eig(pauli_x());
    CHECK(x.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(x.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("three-qubit spectrum at zero tunneling is (-2J,-2J,0,0,0,0,2J,2J)") {
    const double j = 25.0;
    QubitParams p;
    p.j12 = j;
    p.j23 = j;
    const EigenDecomposition ed = hermitian_eig(build_h3(p));
    const double expected[8] = {-2 * j, -2 * j, 0, 0, 0, 0, 2 * j, 2 * j};
    for (int k = 0; k < 8; ++k)
        CHECK(ed.eigenvalues[k] == doctest::Approx(expected[k]).epsilon(1e-13));
}

TEST_CASE("hermitian_eig reconstruction and orthonormality on random inputs") {
    oracles::Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = (trial % 3 == 0) ? 64 : 8;
        const ComplexMatrix a = oracles::random_hermitian(rng, n, 10.0);
        const EigenDecomposition ed = hermitian_eig(a);

        const ComplexMatrix& v = ed.eigenvectors;
        ComplexMatrix recon(n);
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) {
                Complex s = 0.0;
                for (int k = 0; k < n; ++k)
                    s += v(i, k) * ed.eigenvalues[k] * std::conj(v(jj, k));
                recon(i, jj) = s;
            }
        CHECK(frobenius_distance(recon, a) <= 1e-10 * a.frobenius_norm());
        CHECK(frobenius_distance(v.adjoint() * v, ComplexMatrix::identity(n)) <= 1e-10);
        for (int k = 1; k < n; ++k) CHECK(ed.eigenvalues[k] >= ed.eigenvalues[k - 1]);
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("matrix_sqrt_psd basics") {
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    CHECK(frobenius_distance(matrix_sqrt_psd(i3), i3) <= 1e-12);

    const ComplexMatrix r = matrix_sqrt_psd(diag_matrix({4, 9}));
    CHECK(r(0, 0).real() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r(1, 1).real() == doctest::Approx(3.0).epsilon(1e-13));

    // rank-1 projectors are idempotent PSD, so they are their own root; the
    // root itself carries sqrt(eps)-size noise from the zero eigenvalues,
    // while its square honors the tighter contract
    oracles::Rng rng(7);
    const PureState psi = oracles::random_pure_state(rng);
    const ComplexMatrix proj = psi.density();
    const ComplexMatrix root = matrix_sqrt_psd(proj);
    CHECK(frobenius_distance(root, proj) <= 1e-7);
    CHECK(frobenius_distance(root * root, proj) <= 1e-12);
}

TEST_CASE("matrix_sqrt_psd squares back on random PSD matrices") {
    oracles::Rng rng(1234);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = oracles::random_psd(rng, (trial % 2) ? 4 : 8, 1.0);
        const ComplexMatrix r = matrix_sqrt_psd(a);
        CHECK(frobenius_distance(r * r, a) <= 1e-9 * std::max(1.0, a.frobenius_norm()));
    }
}

TEST_CASE("matrix_sqrt_psd rejects indefinite input") {
    CHECK_THROWS_AS(matrix_sqrt_psd(diag_matrix({1, -1})), NotPSD);
}

TEST_CASE("partial trace of product and GHZ states") {
    const ComplexMatrix rho000 = basis_state("000").density();
    const ComplexMatrix r1 = partial_trace(rho000, {1});
    CHECK(r1(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(r1(1, 1)) <= 1e-15);

    const ComplexMatrix rho_ghz = ghz_state(0.0).density();
    const ComplexMatrix ra = partial_trace(rho_ghz, {1});
    CHECK(ra(0, 0).real() == doctest::Approx(0.5));
    CHECK(ra(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(ra(0, 1)) <= 1e-15);

    // two-qubit reduction checked against the brute-force contraction oracle
    const ComplexMatrix rab = partial_trace(rho_ghz, {1, 2});
    const ComplexMatrix expect = oracles::brute_partial_trace(rho_ghz, {1, 2});
    CHECK(frobenius_distance(rab, expect) <= 1e-14);
    CHECK(rab(0, 0).real() == doctest::Approx(0.5));
    CHECK(rab(3, 3).real() == doctest::Approx(0.5));
    CHECK(std::abs(rab(0, 3)) <= 1e-15);
}

TEST_CASE("partial trace matches the contraction oracle on random states") {
    oracles::Rng rng(99);
    const std::vector<std::vector<int>> keeps = {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}};
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = oracles::random_pure_state(rng).density();
        for (const auto& keep : keeps) {
            const std::set<int> ks(keep.begin(), keep.end());
            const ComplexMatrix got = partial_trace(rho, ks);
            const ComplexMatrix want = oracles::brute_partial_trace(rho, keep);
            CHECK(frobenius_distance(got, want) <= 1e-13);
            CHECK(std::abs(got.trace() - rho.trace()) <= 1e-12);
            CHECK(got.is_hermitian(1e-10));
        }
    }
}

TEST_CASE("partial trace rejects empty and full subsets") {
    const ComplexMatrix rho = ghz_state(0.0).density();
    CHECK_THROWS_AS(partial_trace(rho, {}), BadSubset);
    CHECK_THROWS_AS(partial_trace(rho, {1, 2, 3}), BadSubset);
    CHECK_THROWS_AS(partial_trace(rho, {4}), BadSubset);
}

TEST_CASE("frobenius_distance") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(frobenius_distance(i2, i2) == 0.0);
    CHECK(frobenius_distance(i2, ComplexMatrix(2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(frobenius_distance(i2, ComplexMatrix(3)), DimMismatch);
}

TEST_CASE("solve_linear recovers a known solution") {
    oracles::Rng rng(5);
    const ComplexMatrix a = oracles::random_matrix(rng, 6);
    const ComplexMatrix x_true = oracles::random_matrix(rng, 6);
    const ComplexMatrix b = a * x_true;
    const ComplexMatrix x = solve_linear(a, b);
    CHECK(frobenius_distance(x, x_true) <= 1e-10 * x_true.frobenius_norm());
}
