#pragma once

#include <array>
#include <string>

#include "ghzsim/dynamics.hpp"
#include "ghzsim/matrix.hpp"
#include "ghzsim/model.hpp"

namespace ghzsim {

// Block split of an 8x8 Hamiltonian into a 2-state subspace A and the
// 6-state complement B, in basis-label order.
struct BlockPartition {
    std::array<std::string, 2> a_labels;
    std::array<std::string, 6> b_labels;
    ComplexMatrix haa;  // 2x2
    ComplexMatrix hab;  // 2x6
    ComplexMatrix hba;  // 6x2
    ComplexMatrix hbb;  // 6x6

    // Blocks reassembled into the label-permuted full matrix (A first).
    ComplexMatrix reassemble() const;
};

BlockPartition partition(const ComplexMatrix& h, const std::array<std::string, 2>& a_labels);

enum class OmegaMethod {
    ThirdOrder,      // explicit double-sum third-order expression
    ExactResolvent,  // <a1| H^AB (E - H^BB)^{-1} H^BA |a0> by direct 6x6 solve
};

// Effective coupling between the two A states, evaluated from the block
// machinery with the resolvent energy pinned to the unperturbed subspace
// energy E_A. Returns |Omega| in micro-eV.
double omega_numeric(const QubitParams& p, const std::array<std::string, 2>& a_labels,
                     OmegaMethod method = OmegaMethod::ThirdOrder);

// Closed form Omega = Delta^3 / J^2 (micro-eV).
double omega_closed_form(double delta, double j);

// Quarter Rabi period (pi/4) hbar J^2 / Delta^3 in ns.
double formation_time(double delta, double j);

// Two-level reduction: coupling, subspace energy, and formation time.
struct EffectiveModel {
    double omega = 0.0;           // micro-eV
    double e_a = 0.0;             // micro-eV
    std::array<std::string, 2> a_labels;
    double formation_time_ns = 0.0;
};

EffectiveModel make_effective_model(const QubitParams& p,
                                    const std::array<std::string, 2>& a_labels);

// Closed-form Rabi populations of the two A states from the given initial
// label; diagnostics are evaluated on the effective pure state.
TimeSeries evolve_effective(const EffectiveModel& model, std::string_view initial,
                            const TimeGrid& grid);

// Max |P_exact - P_effective| over t <= formation time, for both A states.
struct EffectiveDeviationReport {
    EffectiveModel model;
    double max_dev_initial = 0.0;
    double max_dev_other = 0.0;
};

EffectiveDeviationReport effective_vs_exact_report(const QubitParams& p,
                                                   const std::array<std::string, 2>& a_labels,
                                                   const TimeGrid& grid);

}  // namespace ghzsim
