#include "ghzsim/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace ghzsim {

double fidelity(const ComplexMatrix& rho, const PureState& target) {
    if (rho.rows() != 8 || rho.cols() != 8) throw DimMismatch("fidelity expects 8x8");
    Complex f = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            f += std::conj(target.amplitudes[i]) * rho(i, j) * target.amplitudes[j];
    return f.real();
}

double tau_one_to_rest(const ComplexMatrix& rho, int pivot) {
    const ComplexMatrix r = partial_trace(rho, {pivot});
    // det of the 2x2 Hermitian reduced state
    const double det = r(0, 0).real() * r(1, 1).real() - std::norm(r(0, 1));
    return 4.0 * det;
}

double tau_pair(const ComplexMatrix& rho, int qubit_a, int qubit_b) {
    if (qubit_a == qubit_b) throw BadSubset("pair qubits must differ");
    const ComplexMatrix red = partial_trace(rho, {qubit_a, qubit_b});
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    const ComplexMatrix tilde = yy * red.conjugate() * yy;

    // sqrt(rho) rho~ sqrt(rho) is Hermitian; fold the product round-off back
    // onto the Hermitian part so near-zero products (separable states) do not
    // trip the eigensolver's relative Hermiticity gate.
    const ComplexMatrix sq = matrix_sqrt_psd(red);
    ComplexMatrix m = sq * tilde * sq;
    m += m.adjoint();
    m *= Complex(0.5, 0.0);
    const EigenDecomposition ed = hermitian_eig(m);
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(ed.eigenvalues[k], 0.0));
    std::sort(lam.begin(), lam.end(), std::greater<>());

    const double tr = (red * tilde).trace().real();
    const double val = tr - 2.0 * lam[0] * lam[1];
    return std::max(val, 0.0);
}

TangleReport tangle_report(const ComplexMatrix& rho, int pivot) {
    if (pivot < 1 || pivot > 3) throw BadSubset("pivot must be in {1,2,3}");
    int others[2];
    int n = 0;
    for (int q = 1; q <= 3; ++q)
        if (q != pivot) others[n++] = q;

    TangleReport rep;
    rep.tau_one_to_rest = tau_one_to_rest(rho, pivot);
    rep.tau_ab = tau_pair(rho, pivot, others[0]);
    rep.tau_ac = tau_pair(rho, pivot, others[1]);
    rep.tau2 = rep.tau_ab + rep.tau_ac;
    rep.tau3 = std::max(rep.tau_one_to_rest - rep.tau_ab - rep.tau_ac, 0.0);
    return rep;
}

}  // namespace ghzsim
