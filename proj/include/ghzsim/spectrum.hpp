#pragma once

#include <array>
#include <vector>

#include "ghzsim/dynamics.hpp"

namespace ghzsim {

// One row of the tunneling sweep: eigenvalues in units of J plus the
// fidelities of the extreme eigenstates against the GHZ/FLIP references.
// The 6th/7th excited states are matched to GHZ(pi)/GHZ(0) and the ground/
// 1st excited to FLIP(pi)/FLIP(0), taking the assignment that maximizes the
// total fidelity within each pair.
struct SpectrumRow {
    double delta = 0.0;                      // micro-eV
    std::array<double, 8> evals_over_j{};    // ascending
    double fid_6th_ghz_pi = 0.0;
    double fid_7th_ghz_0 = 0.0;
    double fid_ground_flip_pi = 0.0;
    double fid_1st_flip_0 = 0.0;
};

std::vector<SpectrumRow> sweep_spectrum(double j, const std::vector<double>& deltas);

// Formation-time table: formula estimate vs the first fidelity peak of the
// exact unitary run started from |000> with target GHZ(-pi/2).
struct FormationRow {
    double delta = 0.0;       // micro-eV
    double t_formula = 0.0;   // ns
    double t_exact = 0.0;     // ns
    double peak_fidelity = 0.0;
};

// Throws PeakNotFound when no interior fidelity maximum exists before
// 3 * t_formula. Rows are computed independently (worker threads) but
// returned in input order.
std::vector<FormationRow> formation_time_sweep(double j, const std::vector<double>& deltas);

// Single formation-time row; exposed for the sweep CLI mode.
FormationRow formation_row(double j, double delta);

}  // namespace ghzsim
