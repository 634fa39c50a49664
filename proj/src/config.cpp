#include "ghzsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace ghzsim {

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Evolve: return "evolve";
        case Mode::Dephase: return "dephase";
        case Mode::Spectrum: return "spectrum";
        case Mode::Effective: return "effective";
        case Mode::Sweep: return "sweep";
    }
    return "?";
}

Mode mode_from_name(const std::string& name) {
    if (name == "evolve") return Mode::Evolve;
    if (name == "dephase") return Mode::Dephase;
    if (name == "spectrum") return Mode::Spectrum;
    if (name == "effective") return Mode::Effective;
    if (name == "sweep") return Mode::Sweep;
    throw ValidationError("mode must be one of evolve|dephase|spectrum|effective|sweep, got '" +
                          name + "'");
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Arithmetic expressions over +, -, *, /, parentheses, numbers and
// previously-bound identifiers (pi plus scalar model keys like J).
class ExprParser {
public:
    ExprParser(const std::string& text, const std::map<std::string, double>& env, int line,
               const std::string& field)
        : s_(text), env_(env), line_(line), field_(field) {}

    double parse() {
        const double v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing characters");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, field_, msg + " in expression '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                const double d = factor();
                if (d == 0.0) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    double factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (eat('(')) {
            const double v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("malformed number");
            }
            pos_ += used;
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos_;
            while (end < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                ++end;
            const std::string name = s_.substr(pos_, end - pos_);
            pos_ = end;
            auto it = env_.find(name);
            if (it == env_.end()) fail("unknown identifier '" + name + "'");
            return it->second;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    const std::map<std::string, double>& env_;
    int line_;
    std::string field_;
    size_t pos_ = 0;
};

struct RawEntry {
    std::string value;
    int line = 0;
};

// Ordered key/value pairs per section; "" is the top level.
struct RawDoc {
    std::map<std::string, std::vector<std::pair<std::string, RawEntry>>> sections;

    RawEntry* find(const std::string& section, const std::string& key) {
        auto it = sections.find(section);
        if (it == sections.end()) return nullptr;
        for (auto& kv : it->second)
            if (kv.first == key) return &kv.second;
        return nullptr;
    }

    void set(const std::string& section, const std::string& key, const std::string& value,
             int line) {
        if (RawEntry* e = find(section, key)) {
            e->value = value;
            e->line = line;
        } else {
            sections[section].push_back({key, {value, line}});
        }
    }
};

const std::set<std::string> kKnownSections = {"",        "model",   "sixdot",  "grid",
                                              "dephasing", "targets", "output", "spectrum",
                                              "sweep"};

const std::map<std::string, std::set<std::string>> kSectionKeys = {
    {"", {"mode", "initial"}},
    {"model", {"j", "j12", "j23", "delta", "epsilon"}},
    {"sixdot", {"e", "v", "u13", "u14", "u23", "u24", "u35", "u36", "u45", "u46"}},
    {"grid", {"t_start", "t_end", "dt", "sample_every"}},
    {"dephasing", {"gamma"}},
    {"output", {"dir"}},
    {"spectrum", {"delta_min", "delta_max", "points"}},
    {"sweep", {"deltas"}},
};

RawDoc parse_raw(const std::string& text) {
    RawDoc doc;
    std::string section;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "", "unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!kKnownSections.count(section))
                throw ParseError(line_no, section, "unknown section");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "", "expected 'key = value', got '" + line + "'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "", "empty key");
        if (value.empty()) throw ParseError(line_no, key, "empty value");
        if (section != "targets") {
            auto it = kSectionKeys.find(section);
            if (it != kSectionKeys.end() && !it->second.count(key))
                throw ParseError(line_no, key,
                                 "unknown key in [" + (section.empty() ? "top-level" : section) +
                                     "]");
        }
        doc.set(section, key, value, line_no);
    }
    return doc;
}

void apply_override(RawDoc& doc, const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ParseError(0, assignment, "--set expects section.key=value");
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (value.empty()) throw ParseError(0, path, "--set value is empty");
    const size_t dot = path.find('.');
    std::string section = (dot == std::string::npos) ? "" : lower(trim(path.substr(0, dot)));
    std::string key = lower(trim((dot == std::string::npos) ? path : path.substr(dot + 1)));
    if (!kKnownSections.count(section)) throw ParseError(0, section, "unknown section in --set");
    if (section != "targets") {
        auto it = kSectionKeys.find(section);
        if (it != kSectionKeys.end() && !it->second.count(key))
            throw ParseError(0, key, "unknown key in --set");
    }
    doc.set(section, key, value, 0);
}

std::vector<double> parse_list(const std::string& value, const std::map<std::string, double>& env,
                               int line, const std::string& field) {
    std::vector<double> out;
    size_t start = 0;
    while (start <= value.size()) {
        size_t comma = value.find(',', start);
        const std::string item =
            trim(value.substr(start, comma == std::string::npos ? comma : comma - start));
        if (item.empty()) throw ParseError(line, field, "empty list element");
        out.push_back(ExprParser(item, env, line, field).parse());
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// "ghz(expr)", "flip(expr)" or a 3-bit basis label.
PureState parse_state(const std::string& value, const std::map<std::string, double>& env,
                      int line, const std::string& field) {
    const std::string v = trim(value);
    const std::string lv = lower(v);
    for (const char* kind : {"ghz", "flip"}) {
        const size_t klen = std::string(kind).size();
        if (lv.rfind(kind, 0) == 0) {
            std::string rest = trim(v.substr(klen));
            double phi = 0.0;
            if (!rest.empty()) {
                if (rest.front() != '(' || rest.back() != ')')
                    throw ParseError(line, field, "expected " + std::string(kind) + "(phase)");
                phi = ExprParser(rest.substr(1, rest.size() - 2), env, line, field).parse();
            }
            return (std::string(kind) == "ghz") ? ghz_state(phi) : flip_state(phi);
        }
    }
    try {
        return basis_state(v);
    } catch (const UnknownLabel&) {
        throw ParseError(line, field,
                         "expected basis label or ghz(phase)/flip(phase), got '" + v + "'");
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides,
                              const std::optional<std::string>& mode_override) {
    RawDoc doc = parse_raw(text);
    for (const auto& ov : overrides) apply_override(doc, ov);

    std::map<std::string, double> env;
    env["pi"] = std::numbers::pi;

    ExperimentConfig cfg;

    // mode
    if (mode_override) {
        cfg.mode = mode_from_name(*mode_override);
    } else if (RawEntry* e = doc.find("", "mode")) {
        cfg.mode = mode_from_name(lower(trim(e->value)));
    } else {
        throw ValidationError("mode is required (config key or CLI subcommand)");
    }

    const bool has_model = doc.sections.count("model") > 0;
    const bool has_sixdot = doc.sections.count("sixdot") > 0;
    if (has_model && has_sixdot)
        throw ValidationError("[model] and [sixdot] are mutually exclusive");
    if (!has_model && !has_sixdot)
        throw ValidationError("model parameters required: provide [model] or [sixdot]");

    if (has_model) {
        std::optional<std::vector<double>> delta, epsilon;
        std::optional<double> j, j12, j23;
        for (const auto& [key, entry] : doc.sections.at("model")) {
            if (key == "j") {
                j = ExprParser(entry.value, env, entry.line, key).parse();
                env["J"] = *j;
                env["j"] = *j;
            } else if (key == "j12") {
                j12 = ExprParser(entry.value, env, entry.line, key).parse();
            } else if (key == "j23") {
                j23 = ExprParser(entry.value, env, entry.line, key).parse();
            } else if (key == "delta") {
                delta = parse_list(entry.value, env, entry.line, key);
            } else if (key == "epsilon") {
                epsilon = parse_list(entry.value, env, entry.line, key);
            }
        }
        if (!j && !(j12 && j23))
            throw ValidationError("[model] requires J (or both j12 and j23)");
        cfg.params.j12 = j12.value_or(j.value_or(0.0));
        cfg.params.j23 = j23.value_or(j.value_or(0.0));
        auto broadcast3 = [](const std::vector<double>& v, const char* what) {
            if (v.size() == 1) return std::array<double, 3>{v[0], v[0], v[0]};
            if (v.size() == 3) return std::array<double, 3>{v[0], v[1], v[2]};
            throw ValidationError(std::string(what) + " must have 1 or 3 entries");
        };
        if (delta) cfg.params.delta = broadcast3(*delta, "model.delta");
        if (epsilon) cfg.params.epsilon = broadcast3(*epsilon, "model.epsilon");
    } else {
        SixDotParams sd;
        bool have_e = false, have_v = false;
        for (const auto& [key, entry] : doc.sections.at("sixdot")) {
            if (key == "e") {
                const auto vals = parse_list(entry.value, env, entry.line, key);
                if (vals.size() != 6) throw ValidationError("sixdot.e must have 6 entries");
                std::copy(vals.begin(), vals.end(), sd.site_energies.begin());
                have_e = true;
            } else if (key == "v") {
                const auto vals = parse_list(entry.value, env, entry.line, key);
                if (vals.size() != 3) throw ValidationError("sixdot.v must have 3 entries");
                std::copy(vals.begin(), vals.end(), sd.tunnelings.begin());
                have_v = true;
            } else {
                static const std::map<std::string, int> slot = {
                    {"u13", 0}, {"u14", 1}, {"u23", 2}, {"u24", 3},
                    {"u35", 4}, {"u36", 5}, {"u45", 6}, {"u46", 7}};
                sd.coulomb[slot.at(key)] = ExprParser(entry.value, env, entry.line, key).parse();
            }
        }
        if (!have_e || !have_v) throw ValidationError("[sixdot] requires e and v");
        cfg.sixdot = sd;
        auto [qp, offset] = map_params(sd);
        cfg.params = qp;
        cfg.energy_offset = offset;
    }
    for (double x : cfg.params.epsilon)
        if (!std::isfinite(x)) throw ValidationError("epsilon must be finite");
    for (double x : cfg.params.delta)
        if (!std::isfinite(x)) throw ValidationError("delta must be finite");
    if (!std::isfinite(cfg.params.j12) || !std::isfinite(cfg.params.j23))
        throw ValidationError("couplings must be finite");
    cfg.j_ref = 0.5 * (cfg.params.j12 + cfg.params.j23);

    // grid
    const bool needs_grid =
        cfg.mode == Mode::Evolve || cfg.mode == Mode::Dephase || cfg.mode == Mode::Effective;
    if (doc.sections.count("grid")) {
        bool have_t_end = false;
        for (const auto& [key, entry] : doc.sections.at("grid")) {
            const double v = ExprParser(entry.value, env, entry.line, key).parse();
            if (key == "t_start") cfg.grid.t_start = v;
            else if (key == "t_end") { cfg.grid.t_end = v; have_t_end = true; }
            else if (key == "dt") cfg.grid.dt = v;
            else if (key == "sample_every") {
                if (v < 1 || v != std::floor(v))
                    throw ValidationError("grid.sample_every must be a positive integer");
                cfg.grid.sample_every = static_cast<int>(v);
            }
        }
        if (needs_grid && !have_t_end)
            throw ValidationError("grid.t_end required for " + mode_name(cfg.mode));
        if (needs_grid) cfg.grid.validate();
    } else if (needs_grid) {
        throw ValidationError("grid required for " + mode_name(cfg.mode));
    }

    // dephasing
    if (doc.sections.count("dephasing")) {
        for (const auto& [key, entry] : doc.sections.at("dephasing")) {
            const auto vals = parse_list(entry.value, env, entry.line, key);
            DephasingConfig dc;
            if (vals.size() == 1) {
                dc = DephasingConfig::uniform(vals[0]);
            } else if (vals.size() == 8) {
                std::copy(vals.begin(), vals.end(), dc.gamma.begin());
            } else {
                throw ValidationError("dephasing.gamma must have 1 or 8 entries");
            }
            dc.validate();
            cfg.dephasing = dc;
        }
    }
    if (cfg.mode == Mode::Dephase && !cfg.dephasing)
        throw ValidationError("dephasing required for dephase mode");

    // initial state
    if (RawEntry* e = doc.find("", "initial")) {
        cfg.initial = trim(e->value);
        cfg.initial_state = parse_state(e->value, env, e->line, "initial");
    } else {
        cfg.initial_state = basis_state(cfg.initial);
    }
    if (cfg.mode == Mode::Effective && cfg.initial != "000" && cfg.initial != "111" &&
        cfg.initial != "010" && cfg.initial != "101")
        throw ValidationError("effective mode requires initial in {000, 111, 010, 101}");

    // targets; evolve/dephase default to the two GHZ references
    if (doc.sections.count("targets")) {
        for (const auto& [key, entry] : doc.sections.at("targets"))
            cfg.targets.push_back({key, parse_state(entry.value, env, entry.line, key)});
    } else if (cfg.mode == Mode::Evolve || cfg.mode == Mode::Dephase) {
        cfg.targets.push_back({"ghz-", ghz_state(-std::numbers::pi / 2.0)});
        cfg.targets.push_back({"ghz+", ghz_state(std::numbers::pi / 2.0)});
    }

    // output
    if (RawEntry* e = doc.find("output", "dir")) cfg.output_dir = trim(e->value);

    // spectrum sweep bounds
    cfg.spectrum_delta_min = cfg.j_ref / 200.0;
    cfg.spectrum_delta_max = cfg.j_ref;
    if (doc.sections.count("spectrum")) {
        for (const auto& [key, entry] : doc.sections.at("spectrum")) {
            const double v = ExprParser(entry.value, env, entry.line, key).parse();
            if (key == "delta_min") cfg.spectrum_delta_min = v;
            else if (key == "delta_max") cfg.spectrum_delta_max = v;
            else if (key == "points") {
                if (v < 2 || v != std::floor(v))
                    throw ValidationError("spectrum.points must be an integer >= 2");
                cfg.spectrum_points = static_cast<int>(v);
            }
        }
    }
    if (cfg.mode == Mode::Spectrum) {
        if (!(cfg.spectrum_delta_min > 0.0))
            throw ValidationError("spectrum.delta_min must be positive");
        if (!(cfg.spectrum_delta_max > cfg.spectrum_delta_min))
            throw ValidationError("spectrum.delta_max must exceed delta_min");
    }

    // sweep deltas
    if (doc.sections.count("sweep")) {
        for (const auto& [key, entry] : doc.sections.at("sweep"))
            cfg.sweep_deltas = parse_list(entry.value, env, entry.line, key);
    }
    if (cfg.mode == Mode::Sweep) {
        if (cfg.sweep_deltas.empty())
            throw ValidationError("sweep.deltas required for sweep mode");
        for (double d : cfg.sweep_deltas)
            if (!(d > 0.0)) throw ValidationError("sweep.deltas must be positive");
    }

    return cfg;
}

}  // namespace ghzsim
