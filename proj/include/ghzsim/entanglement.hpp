#pragma once

#include "ghzsim/matrix.hpp"
#include "ghzsim/model.hpp"

namespace ghzsim {

// Entanglement quantifiers of a three-qubit state relative to a pivot qubit.
// tau3 = tau_one_to_rest - tau_ab - tau_ac, clamped at 0; tau2 = tau_ab + tau_ac.
struct TangleReport {
    double tau_one_to_rest = 0.0;
    double tau_ab = 0.0;
    double tau_ac = 0.0;
    double tau3 = 0.0;
    double tau2 = 0.0;
};

// <psi|rho|psi> for a pure target.
double fidelity(const ComplexMatrix& rho, const PureState& target);

// 4 Det(rho_pivot): the one-to-rest tangle of the pivot qubit (1..3).
double tau_one_to_rest(const ComplexMatrix& rho, int pivot);

// Pairwise tangle Tr(rho_ab rho~_ab) - 2 lambda_1 lambda_2 with the spin-flip
// operator rho~ = (sy x sy) conj(rho) (sy x sy) and lambda_i the two largest
// square-root eigenvalues, extracted through the Hermitian similarity
// sqrt(rho) rho~ sqrt(rho). Clamped at 0.
double tau_pair(const ComplexMatrix& rho, int qubit_a, int qubit_b);

TangleReport tangle_report(const ComplexMatrix& rho, int pivot = 1);

}  // namespace ghzsim
