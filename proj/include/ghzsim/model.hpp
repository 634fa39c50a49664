#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "ghzsim/matrix.hpp"

namespace ghzsim {

// Raw six-dot parametrization, all in micro-eV. Dots are numbered 1..6;
// molecule m holds dots (2m-1, 2m). Coulomb terms connect neighbouring
// molecules only.
struct SixDotParams {
    std::array<double, 6> site_energies{};            // E_1..E_6
    std::array<double, 3> tunnelings{};               // V_12, V_34, V_56
    // U_13, U_14, U_23, U_24, U_35, U_36, U_45, U_46
    std::array<double, 8> coulomb{};
};

// Three-qubit parametrization, micro-eV. 2*epsilon[q] is the detuning of
// molecule q, delta[q] its tunneling, j12/j23 the inter-qubit couplings.
struct QubitParams {
    std::array<double, 3> epsilon{};
    std::array<double, 3> delta{};
    double j12 = 0.0;
    double j23 = 0.0;
};

// Normalized three-qubit pure state on the basis |q1 q2 q3>, q1 = MSB.
struct PureState {
    std::array<Complex, 8> amplitudes{};

    double norm() const;
    ComplexMatrix density() const;  // 8x8 projector
};

// 2x2 Pauli building blocks with sigma_z = |0><0| - |1><1|.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Single-qubit operator embedded on qubit q (1..3) of the 8-dim space.
ComplexMatrix op_on_qubit(int q, const ComplexMatrix& op);

// 64x64 six-dot Hamiltonian on the occupation basis |n1..n6>, n1 = MSB.
ComplexMatrix build_h6(const SixDotParams& p);

// Restriction of a 64x64 operator to the 8 one-electron-per-molecule states,
// ordered |q1 q2 q3> with |10> = |0> and |01> = |1> per molecule.
ComplexMatrix project_to_qubit_subspace(const ComplexMatrix& h6);

// Exact reduction of the six-dot parameters to QubitParams plus the
// identity energy offset (micro-eV) absorbed by the projection.
std::pair<QubitParams, double> map_params(const SixDotParams& p);

// 8x8 three-qubit Hamiltonian:
//   sum_q [eps_q sz_q + delta_q sx_q] + j12 sz_1 sz_2 + j23 sz_2 sz_3.
ComplexMatrix build_h3(const QubitParams& p);

// Diagonal/off-diagonal split: h0 carries the eps and J terms, v the
// tunneling; h0 + v == build_h3(p) exactly.
std::pair<ComplexMatrix, ComplexMatrix> h0_and_v_split(const QubitParams& p);

// (|000> + e^{i phi} |111>)/sqrt(2) and (|010> + e^{i phi} |101>)/sqrt(2).
PureState ghz_state(double phi);
PureState flip_state(double phi);

// Basis vector for a label like "010". Throws UnknownLabel otherwise.
PureState basis_state(std::string_view label);

// Label <-> index helpers for the shared |q1 q2 q3> ordering.
int basis_index(std::string_view label);
std::string basis_label(int index);

}  // namespace ghzsim
