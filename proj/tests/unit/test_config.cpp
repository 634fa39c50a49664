#include <doctest.h>

#include <cmath>

#include "ghzsim/config.hpp"

using namespace ghzsim;

namespace {

const char* kMinimalEvolve = R"(
mode = evolve
[model]
J = 25
delta = J/6
epsilon = 0
[grid]
t_end = 18
)";

}  // namespace

TEST_CASE("minimal evolve config fills defaults and evaluates expressions") {
    const ExperimentConfig cfg = parse_config(kMinimalEvolve);
    CHECK(cfg.mode == Mode::Evolve);
    CHECK(cfg.params.j12 == doctest::Approx(25.0));
    CHECK(cfg.params.j23 == doctest::Approx(25.0));
    for (int q = 0; q < 3; ++q) {
        CHECK(cfg.params.delta[q] == doctest::Approx(25.0 / 6.0));
        CHECK(cfg.params.epsilon[q] == doctest::Approx(0.0));
    }
    CHECK(cfg.grid.t_start == 0.0);
    CHECK(cfg.grid.t_end == doctest::Approx(18.0));
    CHECK(cfg.grid.dt == doctest::Approx(1e-3));
    CHECK(cfg.grid.sample_every == 50);
    REQUIRE(cfg.targets.size() == 2);
    CHECK(cfg.targets[0].name == "ghz-");
    CHECK(cfg.targets[1].name == "ghz+");
    // ghz(-pi/2) has amplitude -i/sqrt(2) on |111>
    CHECK(cfg.targets[0].state.amplitudes[7].imag() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(cfg.initial == "000");
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.j_ref == doctest::Approx(25.0));
}

TEST_CASE("missing grid is a validation error naming the mode") {
    const char* text = R"(
mode = evolve
[model]
J = 25
delta = J/6
)";
    try {
        parse_config(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("grid required for evolve") != std::string::npos);
    }
}

TEST_CASE("dephase mode requires and parses gamma") {
    const char* text = R"(
mode = dephase
[model]
J = 25
delta = J/6
[grid]
t_end = 9
dt = 0.0005
[dephasing]
gamma = 0.01
)";
    const ExperimentConfig cfg = parse_config(text);
    REQUIRE(cfg.dephasing.has_value());
    for (double g : cfg.dephasing->gamma) CHECK(g == doctest::Approx(0.01));

    const char* no_deph = R"(
mode = dephase
[model]
J = 25
delta = J/6
[grid]
t_end = 9
)";
    try {
        parse_config(no_deph);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("dephasing required") != std::string::npos);
    }
}

TEST_CASE("eight-entry gamma lists and bad lengths") {
    const char* text = R"(
mode = dephase
[model]
J = 25
delta = J/6
[grid]
t_end = 9
dt = 0.0005
[dephasing]
gamma = 0.01, 0.02, 0, 0, 0.05, 0, 0.01, 0.3
)";
    const ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.dephasing->gamma[1] == doctest::Approx(0.02));
    CHECK(cfg.dephasing->gamma[7] == doctest::Approx(0.3));

    CHECK_THROWS_AS(parse_config(R"(
mode = dephase
[model]
J = 25
delta = J/6
[grid]
t_end = 9
[dephasing]
gamma = 0.01, 0.02, 0.3
)"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"(
mode = dephase
[model]
J = 25
delta = J/6
[grid]
t_end = 9
[dephasing]
gamma = -0.5
)"),
                    ValidationError);
}

TEST_CASE("parse errors carry line numbers and fields") {
    try {
        parse_config("mode = evolve\n[model]\nJ = 25\ndelta = J/6 + bogus\n[grid]\nt_end = 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.field() == "delta");
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config("mode = evolve\nnonsense line\n"), ParseError);
    CHECK_THROWS_AS(parse_config("[weird]\nx = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_config("mode = evolve\n[model]\nbanana = 2\n"), ParseError);
    CHECK_THROWS_AS(parse_config("mode = evolve\n[model]\nJ = 1/0\n"), ParseError);
}

TEST_CASE("unknown mode and missing mode") {
    CHECK_THROWS_AS(parse_config("mode = explode\n[model]\nJ = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[model]\nJ = 1\n[grid]\nt_end = 1\n"), ValidationError);
}

TEST_CASE("model and sixdot are mutually exclusive; sixdot reduces") {
    CHECK_THROWS_AS(parse_config(R"(
mode = evolve
[model]
J = 1
[sixdot]
e = 0,0,0,0,0,0
v = 1,1,1
[grid]
t_end = 1
)"),
                    ValidationError);

    const ExperimentConfig cfg = parse_config(R"(
mode = evolve
[sixdot]
e = 0, 0, 0, 0, 0, 0
v = 2, 2, 2
u13 = 10
u24 = 10
u35 = 10
u46 = 10
[grid]
t_end = 10
)");
    REQUIRE(cfg.sixdot.has_value());
    CHECK(cfg.params.j12 == doctest::Approx(5.0));  // u/2
    CHECK(cfg.params.j23 == doctest::Approx(5.0));
    CHECK(cfg.params.delta[0] == doctest::Approx(2.0));
    CHECK(cfg.energy_offset == doctest::Approx(10.0));
}

TEST_CASE("initial and target state expressions") {
    const ExperimentConfig cfg = parse_config(R"(
mode = evolve
initial = flip(pi)
[model]
J = 25
delta = J/6
[grid]
t_end = 5
[targets]
flip- = flip(-pi/2)
plain = 101
)");
    CHECK(cfg.initial_state.amplitudes[2].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(cfg.initial_state.amplitudes[5].real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    REQUIRE(cfg.targets.size() == 2);
    CHECK(cfg.targets[0].name == "flip-");
    CHECK(cfg.targets[1].state.amplitudes[5].real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(parse_config(R"(
mode = evolve
initial = wstate
[model]
J = 25
delta = J/6
[grid]
t_end = 5
)"),
                    ParseError);
}

TEST_CASE("overrides replace file values and re-evaluate expressions") {
    const ExperimentConfig cfg =
        parse_config(kMinimalEvolve, {"model.j=30", "grid.dt=0.0005", "initial=010"});
    CHECK(cfg.params.j12 == doctest::Approx(30.0));
    // delta = J/6 must see the overridden J
    CHECK(cfg.params.delta[0] == doctest::Approx(5.0));
    CHECK(cfg.grid.dt == doctest::Approx(5e-4));
    CHECK(cfg.initial == "010");

    CHECK_THROWS_AS(parse_config(kMinimalEvolve, {"grid.dt"}), ParseError);
    CHECK_THROWS_AS(parse_config(kMinimalEvolve, {"nosuch.key=1"}), ParseError);
}

TEST_CASE("mode override wins over the config key") {
    const ExperimentConfig cfg = parse_config(kMinimalEvolve, {}, std::string("spectrum"));
    CHECK(cfg.mode == Mode::Spectrum);
    CHECK(cfg.spectrum_points == 200);
    CHECK(cfg.spectrum_delta_min == doctest::Approx(25.0 / 200.0));
    CHECK(cfg.spectrum_delta_max == doctest::Approx(25.0));
}

TEST_CASE("sweep mode requires positive deltas") {
    const ExperimentConfig cfg = parse_config(R"(
mode = sweep
[model]
J = 25
[sweep]
deltas = J/10, J/6, J/4, J/2
)");
    REQUIRE(cfg.sweep_deltas.size() == 4);
    CHECK(cfg.sweep_deltas[0] == doctest::Approx(2.5));

    CHECK_THROWS_AS(parse_config("mode = sweep\n[model]\nJ = 25\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("mode = sweep\n[model]\nJ = 25\n[sweep]\ndeltas = -1\n"),
                    ValidationError);
}

TEST_CASE("grid sanity violations surface as validation errors") {
    CHECK_THROWS_AS(parse_config(R"(
mode = evolve
[model]
J = 25
delta = J/6
[grid]
t_end = -5
)"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"(
mode = evolve
[model]
J = 25
delta = J/6
[grid]
t_end = 5
sample_every = 2.5
)"),
                    ValidationError);
}
