#include "ghzsim/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ghzsim/effective.hpp"
#include "ghzsim/spectrum.hpp"

namespace ghzsim {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string g12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string sanitize(std::string name) {
    for (char& c : name)
        if (c == ',' || c == ' ' || c == '\t') c = '_';
    return name;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
    out << content;
}

std::string timeseries_csv(const TimeSeries& ts) {
    std::ostringstream os;
    os << "t_ns";
    for (int k = 0; k < 8; ++k) os << ",P_" << basis_label(k);
    for (const auto& name : ts.target_names) os << ",F_" << sanitize(name);
    os << ",tau3,tau2,purity,trace_error\n";
    for (size_t s = 0; s < ts.size(); ++s) {
        os << g12(ts.times[s]);
        for (int k = 0; k < 8; ++k) os << ',' << g12(ts.populations[k][s]);
        for (const auto& f : ts.fidelities) os << ',' << g12(f[s]);
        os << ',' << g12(ts.tau3[s]) << ',' << g12(ts.tau2[s]) << ',' << g12(ts.purity[s])
           << ',' << g12(ts.trace_error[s]) << '\n';
    }
    return os.str();
}

ordered_json params_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["epsilon_ueV"] = cfg.params.epsilon;
    j["delta_ueV"] = cfg.params.delta;
    j["j12_ueV"] = cfg.params.j12;
    j["j23_ueV"] = cfg.params.j23;
    if (cfg.sixdot) j["energy_offset_ueV"] = cfg.energy_offset;
    return j;
}

ordered_json peaks_json(const TimeSeries& ts, std::optional<double>* t_exact_first) {
    ordered_json peaks = ordered_json::object();
    for (size_t i = 0; i < ts.target_names.size(); ++i) {
        const Peak pk = find_peak(ts.times, ts.fidelities[i], ts.times.back());
        ordered_json p;
        p["fidelity"] = pk.value;
        p["t_ns"] = pk.t;
        p["interior"] = pk.interior;
        peaks[sanitize(ts.target_names[i])] = p;
        if (i == 0 && t_exact_first && pk.interior) *t_exact_first = pk.t;
    }
    return peaks;
}

ordered_json renorm_json(const TimeSeries& ts) {
    ordered_json j;
    j["count"] = ts.renorm_count;
    if (ts.first_renorm_time) j["first_t_ns"] = *ts.first_renorm_time;
    return j;
}

void add_effective_summary(ordered_json& summary, const ExperimentConfig& cfg) {
    const auto res = resonant_symmetric(cfg.params);
    if (!res) return;
    const auto [delta, jj] = *res;
    ordered_json om;
    om["closed_form_ueV"] = omega_closed_form(delta, jj);
    om["numeric_ueV"] = omega_numeric(cfg.params, {"000", "111"});
    summary["omega"] = om;
    summary["t_formula_ns"] = formation_time(delta, jj);
}

double dist_to_maximally_mixed(const ComplexMatrix& rho) {
    ComplexMatrix mixed = ComplexMatrix::identity(8);
    mixed *= Complex(0.125, 0.0);
    return frobenius_distance(rho, mixed);
}

void run_timeseries_mode(const ExperimentConfig& cfg, const fs::path& out) {
    const ComplexMatrix h = build_h3(cfg.params);
    const DensityMatrix rho0 = DensityMatrix::pure(cfg.initial_state);

    ComplexMatrix rho_final(8);
    const StateObserver keep_final = [&rho_final](double, const ComplexMatrix& r) {
        rho_final = r;
    };

    TimeSeries ts;
    if (cfg.mode == Mode::Dephase)
        ts = evolve_lindblad(h, rho0, cfg.grid, *cfg.dephasing, cfg.targets, keep_final);
    else
        ts = evolve_unitary(h, rho0, cfg.grid, cfg.targets, UnitaryMethod::ExactPropagator,
                            keep_final);

    write_file(out / "timeseries.csv", timeseries_csv(ts));

    ordered_json summary;
    summary["mode"] = mode_name(cfg.mode);
    summary["params"] = params_json(cfg);
    summary["initial"] = cfg.initial;
    add_effective_summary(summary, cfg);
    std::optional<double> t_exact;
    summary["peaks"] = peaks_json(ts, &t_exact);
    if (t_exact) summary["t_exact_ns"] = *t_exact;
    if (cfg.mode == Mode::Dephase) {
        ordered_json conv;
        conv["gamma_ghz"] = cfg.dephasing->gamma;
        ordered_json gam = ordered_json::array();
        for (double g : cfg.dephasing->gamma) gam.push_back(kPlanck * g);
        conv["Gamma_ueV"] = gam;  // Gamma = h * gamma
        summary["rate_convention"] = conv;
    }
    ordered_json fin;
    fin["t_ns"] = ts.times.back();
    fin["purity"] = ts.purity.back();
    fin["trace_error"] = ts.trace_error.back();
    fin["dist_to_maximally_mixed"] = dist_to_maximally_mixed(rho_final);
    summary["final"] = fin;
    summary["renormalizations"] = renorm_json(ts);
    write_file(out / "summary.json", summary.dump(2) + "\n");
}

void run_effective_mode(const ExperimentConfig& cfg, const fs::path& out) {
    const int idx = basis_index(cfg.initial);  // throws UnknownLabel for ghz(...)/flip(...)
    std::array<std::string, 2> labels;
    if (idx == 0 || idx == 7)
        labels = {"000", "111"};
    else if (idx == 2 || idx == 5)
        labels = {"010", "101"};
    else
        throw ValidationError("effective mode requires initial in {000, 111, 010, 101}");
    if (basis_index(cfg.initial) != basis_index(labels[0]))
        std::swap(labels[0], labels[1]);

    // Exact reference run, with FLIP/GHZ targets matching the subspace.
    std::vector<NamedTarget> targets = cfg.targets;
    if (targets.empty()) {
        const bool ghz_space = (idx == 0 || idx == 7);
        const double pi = std::numbers::pi;
        targets.push_back({ghz_space ? "ghz-" : "flip-",
                           ghz_space ? ghz_state(-pi / 2) : flip_state(-pi / 2)});
        targets.push_back({ghz_space ? "ghz+" : "flip+",
                           ghz_space ? ghz_state(pi / 2) : flip_state(pi / 2)});
    }
    const ComplexMatrix h = build_h3(cfg.params);
    const TimeSeries exact =
        evolve_unitary(h, DensityMatrix::pure(cfg.initial_state), cfg.grid, targets);
    write_file(out / "timeseries.csv", timeseries_csv(exact));

    const EffectiveModel model = make_effective_model(cfg.params, labels);
    const TimeSeries eff = evolve_effective(model, labels[0], cfg.grid);
    write_file(out / "effective.csv", timeseries_csv(eff));

    const EffectiveDeviationReport rep = effective_vs_exact_report(cfg.params, labels, cfg.grid);

    ordered_json summary;
    summary["mode"] = mode_name(cfg.mode);
    summary["params"] = params_json(cfg);
    summary["initial"] = cfg.initial;
    summary["a_labels"] = labels;
    ordered_json om;
    om["numeric_ueV"] = model.omega;
    om["exact_resolvent_ueV"] = omega_numeric(cfg.params, labels, OmegaMethod::ExactResolvent);
    if (const auto res = resonant_symmetric(cfg.params))
        om["closed_form_ueV"] = omega_closed_form(res->first, res->second);
    summary["omega"] = om;
    summary["e_a_ueV"] = model.e_a;
    summary["formation_time_ns"] = model.formation_time_ns;
    std::optional<double> t_exact;
    summary["peaks"] = peaks_json(exact, &t_exact);
    if (t_exact) summary["t_exact_ns"] = *t_exact;
    ordered_json dev;
    dev["max_dev_" + labels[0]] = rep.max_dev_initial;
    dev["max_dev_" + labels[1]] = rep.max_dev_other;
    summary["effective_vs_exact"] = dev;
    write_file(out / "summary.json", summary.dump(2) + "\n");
}

void run_spectrum_mode(const ExperimentConfig& cfg, const fs::path& out) {
    std::vector<double> deltas(cfg.spectrum_points);
    const double lo = cfg.spectrum_delta_min;
    const double hi = cfg.spectrum_delta_max;
    for (int i = 0; i < cfg.spectrum_points; ++i)
        deltas[i] = lo + (hi - lo) * i / (cfg.spectrum_points - 1);
    const auto rows = sweep_spectrum(cfg.j_ref, deltas);

    std::ostringstream os;
    os << "delta_over_J";
    for (int k = 0; k < 8; ++k) os << ",e" << k << "_over_J";
    os << ",f_6th_ghz_pi,f_7th_ghz_0,f_ground_flip_pi,f_1st_flip_0\n";
    for (const auto& r : rows) {
        os << g12(r.delta / cfg.j_ref);
        for (int k = 0; k < 8; ++k) os << ',' << g12(r.evals_over_j[k]);
        os << ',' << g12(r.fid_6th_ghz_pi) << ',' << g12(r.fid_7th_ghz_0) << ','
           << g12(r.fid_ground_flip_pi) << ',' << g12(r.fid_1st_flip_0) << '\n';
    }
    write_file(out / "spectrum.csv", os.str());

    ordered_json summary;
    summary["mode"] = mode_name(cfg.mode);
    summary["params"] = params_json(cfg);
    summary["points"] = cfg.spectrum_points;
    summary["delta_min_ueV"] = lo;
    summary["delta_max_ueV"] = hi;
    double fmin = 1.0, fmax = 0.0;
    for (const auto& r : rows) {
        fmin = std::min({fmin, r.fid_6th_ghz_pi, r.fid_7th_ghz_0});
        fmax = std::max({fmax, r.fid_6th_ghz_pi, r.fid_7th_ghz_0});
    }
    summary["ghz_fidelity_min"] = fmin;
    summary["ghz_fidelity_max"] = fmax;
    write_file(out / "summary.json", summary.dump(2) + "\n");
}

void run_sweep_mode(const ExperimentConfig& cfg, const fs::path& out) {
    const auto rows = formation_time_sweep(cfg.j_ref, cfg.sweep_deltas);
    std::ostringstream os;
    os << "delta_ueV,delta_over_J,t_formula_ns,t_exact_ns,peak_fidelity\n";
    for (const auto& r : rows)
        os << g12(r.delta) << ',' << g12(r.delta / cfg.j_ref) << ',' << g12(r.t_formula) << ','
           << g12(r.t_exact) << ',' << g12(r.peak_fidelity) << '\n';
    write_file(out / "sweep.csv", os.str());

    ordered_json summary;
    summary["mode"] = mode_name(cfg.mode);
    summary["params"] = params_json(cfg);
    ordered_json jrows = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json jr;
        jr["delta_ueV"] = r.delta;
        jr["t_formula_ns"] = r.t_formula;
        jr["t_exact_ns"] = r.t_exact;
        jr["peak_fidelity"] = r.peak_fidelity;
        jrows.push_back(jr);
    }
    summary["rows"] = jrows;
    write_file(out / "summary.json", summary.dump(2) + "\n");
}

std::vector<std::string> csv_header(const fs::path& file) {
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    return cols;
}

}  // namespace

std::optional<std::pair<double, double>> resonant_symmetric(const QubitParams& p) {
    for (double e : p.epsilon)
        if (std::abs(e) > 1e-12) return std::nullopt;
    const double d = p.delta[0];
    if (!(d > 0.0)) return std::nullopt;
    if (std::abs(p.delta[1] - d) > 1e-12 || std::abs(p.delta[2] - d) > 1e-12)
        return std::nullopt;
    if (std::abs(p.j12 - p.j23) > 1e-12 || !(p.j12 > 0.0)) return std::nullopt;
    return std::make_pair(d, p.j12);
}

int run(const ExperimentConfig& cfg) {
    const fs::path out(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ValidationError("cannot create output directory '" + cfg.output_dir + "'");

    switch (cfg.mode) {
        case Mode::Evolve:
        case Mode::Dephase:
            run_timeseries_mode(cfg, out);
            break;
        case Mode::Effective:
            run_effective_mode(cfg, out);
            break;
        case Mode::Spectrum:
            run_spectrum_mode(cfg, out);
            break;
        case Mode::Sweep:
            run_sweep_mode(cfg, out);
            break;
    }
    emit_plot_script(cfg.output_dir);
    return 0;
}

void emit_plot_script(const std::string& artifact_dir) {
    const fs::path dir(artifact_dir);
    const bool has_ts = fs::exists(dir / "timeseries.csv");
    const bool has_eff = fs::exists(dir / "effective.csv");
    const bool has_spec = fs::exists(dir / "spectrum.csv");
    const bool has_sweep = fs::exists(dir / "sweep.csv");
    if (!has_ts && !has_spec && !has_sweep)
        throw MissingArtifact("no CSV artifacts in '" + artifact_dir + "'");

    std::ostringstream os;
    os << "# gnuplot script generated alongside the CSV artifacts\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead outside\n"
       << "set grid\n";

    if (has_ts) {
        const auto cols = csv_header(dir / "timeseries.csv");
        os << "\nset terminal pngcairo size 1000,800\nset output 'dynamics.png'\n"
           << "set multiplot layout 2,1\n"
           << "set xlabel 't (ns)'\nset ylabel 'population'\n"
           << "plot 'timeseries.csv' using 1:2 with lines lw 2 title 'P_000'";
        os << ", '' using 1:9 with lines lw 2 title 'P_111'";
        if (has_eff)
            os << ", 'effective.csv' using 1:2 with lines dt 2 title 'P_000 eff'"
               << ", '' using 1:9 with lines dt 2 title 'P_111 eff'";
        os << "\nset ylabel 'fidelity / tangle'\nplot ";
        bool first = true;
        for (size_t i = 0; i < cols.size(); ++i) {
            if (cols[i].rfind("F_", 0) == 0 || cols[i] == "tau3") {
                if (!first) os << ", ";
                os << (first ? "'timeseries.csv'" : "''") << " using 1:" << (i + 1)
                   << " with lines lw 2 title '" << cols[i] << "'";
                first = false;
            }
        }
        os << "\nunset multiplot\n";
    }
    if (has_spec) {
        os << "\nset terminal pngcairo size 1000,800\nset output 'spectrum.png'\n"
           << "set multiplot layout 2,1\n"
           << "set xlabel 'Delta / J'\nset ylabel 'E / J'\nplot ";
        for (int k = 0; k < 8; ++k)
            os << (k ? ", ''" : "'spectrum.csv'") << " using 1:" << (k + 2)
               << " with lines title 'e" << k << "'";
        os << "\nset ylabel 'fidelity'\n"
           << "plot 'spectrum.csv' using 1:10 with lines lw 2 title '6th vs GHZ(pi)', "
           << "'' using 1:11 with lines lw 2 title '7th vs GHZ(0)'\n"
           << "unset multiplot\n";
    }
    if (has_sweep) {
        os << "\nset terminal pngcairo size 900,600\nset output 'sweep.png'\n"
           << "set logscale y\nset xlabel 'Delta / J'\nset ylabel 't (ns)'\n"
           << "plot 'sweep.csv' using 2:3 with linespoints title 't formula', "
           << "'' using 2:4 with linespoints title 't exact'\n";
    }
    write_file(dir / "plot.gp", os.str());
}

}  // namespace ghzsim
