#pragma once

#include <optional>
#include <string>

#include "ghzsim/config.hpp"

namespace ghzsim {

// Executes the configured experiment, writing its artifacts (CSV tables,
// summary.json, plot.gp) into cfg.output_dir. Returns 0 on success; numerical
// failures propagate as ghzsim::Error subclasses.
int run(const ExperimentConfig& cfg);

// Writes a gnuplot script rendering whichever CSV artifacts exist in
// artifact_dir. Throws MissingArtifact when none are present.
void emit_plot_script(const std::string& artifact_dir);

// True when the parameters are in the resonant symmetric regime
// (eps = 0, equal delta > 0, j12 = j23 > 0) where the effective two-level
// reduction applies; returns (delta, j).
std::optional<std::pair<double, double>> resonant_symmetric(const QubitParams& p);

}  // namespace ghzsim
