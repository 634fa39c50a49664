#pragma once

#include <complex>
#include <set>
#include <vector>

#include "ghzsim/errors.hpp"

namespace ghzsim {

using Complex = std::complex<double>;

// hbar and h in micro-eV * ns; energies are in micro-eV and times in ns
// throughout the library.
inline constexpr double kHbar = 0.6582119569;
inline constexpr double kPlanck = 4.135667696;

// Dense complex matrix, row-major. Sized for the small operators handled
// here (<= 64x64), so everything is plain O(n^3) with no blocking.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    explicit ComplexMatrix(int dim) : ComplexMatrix(dim, dim) {}

    static ComplexMatrix identity(int dim);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    // Dimension of a square matrix; most operators in this library are square.
    int dim() const;

    Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Complex& operator()(int r, int c) const {
        return a_[static_cast<size_t>(r) * cols_ + c];
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    ComplexMatrix operator*(const ComplexMatrix& o) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;
    double frobenius_norm() const;

    bool all_finite() const;
    bool is_hermitian(double rel_tol = 1e-10) const;

    const std::vector<Complex>& data() const { return a_; }
    std::vector<Complex>& data() { return a_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> a_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns match eigenvalues by index
};

// Kronecker product; result dim = dim(a)*dim(b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Cyclic Jacobi diagonalization of a Hermitian matrix. Throws NotHermitian
// if ||a - a^dag||_F > 1e-10 ||a||_F, NoConvergence after 100 sweeps.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

// Hermitian PSD square root. Eigenvalues below -1e-9 raise NotPSD; small
// negatives from integrator round-off are clamped to zero.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a);

// Partial trace of a three-qubit (8x8) density operator. keep is a proper
// nonempty subset of {1,2,3}; qubit 1 is the most significant bit of the
// basis label and kept qubits appear in ascending order in the result.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::set<int>& keep);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest |eigenvalue| of a Hermitian matrix; used for integrator step guards.
double spectral_norm_hermitian(const ComplexMatrix& a);

// Solves a x = b for square a (partial-pivot Gaussian elimination).
// b may have several columns. Used by the exact-resolvent effective coupling.
ComplexMatrix solve_linear(ComplexMatrix a, ComplexMatrix b);

}  // namespace ghzsim
