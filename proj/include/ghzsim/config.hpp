#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghzsim/dynamics.hpp"
#include "ghzsim/model.hpp"

namespace ghzsim {

enum class Mode { Evolve, Dephase, Spectrum, Effective, Sweep };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);  // throws ValidationError

// Fully validated experiment description. Parameters are in micro-eV, the
// grid in ns, dephasing rates in GHz; everything is deterministic.
struct ExperimentConfig {
    Mode mode = Mode::Evolve;
    QubitParams params;
    std::optional<SixDotParams> sixdot;  // kept when the config was six-dot
    double energy_offset = 0.0;          // micro-eV, from the six-dot reduction
    std::string initial = "000";         // "000".."111", "ghz(phi)" or "flip(phi)"
    PureState initial_state;
    TimeGrid grid;
    std::optional<DephasingConfig> dephasing;
    std::vector<NamedTarget> targets;
    std::string output_dir = "out";

    // spectrum mode
    double spectrum_delta_min = 0.0;
    double spectrum_delta_max = 0.0;
    int spectrum_points = 200;

    // sweep mode
    std::vector<double> sweep_deltas;

    // Reference J for units-of-J output columns.
    double j_ref = 0.0;
};

// Parses the sectioned key = value document described in the README.
// overrides are "section.key=value" (or "key=value" for top-level keys) and
// take precedence over the file; mode_override wins over the mode key.
// Throws ParseError for syntax problems and ValidationError for violated
// invariants or missing mode-specific fields.
ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::string>& overrides = {},
                              const std::optional<std::string>& mode_override = {});

}  // namespace ghzsim
