#include <doctest.h>

#include <string>

#include "infeig/errors.hpp"
#include "infeig_app/commands.hpp"
#include "infeig_app/config.hpp"

using namespace infeig;
using namespace infeig::app;

namespace {

std::size_t offset_of(const std::string& text) {
    try {
        build_run_config(RawConfig::parse(text));
    } catch (const ConfigError& e) {
        return e.offset();
    }
    FAIL("expected a config error");
    return 0;
}

}  // namespace

TEST_CASE("parse flat key=value text") {
    const RawConfig raw = RawConfig::parse("# comment\n domain.type = disk \n\ncoeff.c=-3 # trailing\n");
    REQUIRE(raw.find("domain.type"));
    CHECK(raw.find("domain.type")->value == "disk");
    CHECK(raw.find("domain.type")->key_offset == 11);
    CHECK(raw.find("coeff.c")->value == "-3");
    CHECK(raw.find("coeff.c")->value_offset == 40);
    CHECK(raw.find("coeff.g") == nullptr);
}

TEST_CASE("defaults") {
    const RunConfig cfg = build_run_config(RawConfig::parse(""));
    CHECK(std::holds_alternative<Interval>(cfg.domain.shape()));
    CHECK(cfg.h == 1.0 / 32);
    CHECK(cfg.s == 1);
    CHECK(cfg.bisect_tol == 1e-4);
    CHECK(cfg.solver.inner == InnerMethod::PolicyIteration);
    CHECK(cfg.mpcheck.seeds.size() == 3);
}

TEST_CASE("full config") {
    const RunConfig cfg = build_run_config(RawConfig::parse(
        "domain.type = annulus\ndomain.inner_radius = 0.3\ngrid.h = 1/16\ngrid.s = 2\n"
        "coeff.c = -1 + 0.5*sin(3*x)\ncoeff.lambda = 0.25\nsolver.inner = gauss_seidel\n"
        "solver.sweep_order = symmetric\nsolver.accelerate = false\neigen.bisect_tol = 1e-3\n"
        "evolve.t = 2\nevolve.decay_check = true\nmpcheck.seeds = bump; exp(-r)\nmpcheck.lambda_offset = -0.1\n"
        "output.dir = results\n"));
    const auto& a = std::get<Annulus>(cfg.domain.shape());
    CHECK(a.inner_radius == 0.3);
    CHECK(cfg.h == 1.0 / 16);
    CHECK(cfg.s == 2);
    CHECK(cfg.lambda == 0.25);
    CHECK(cfg.solver.inner == InnerMethod::GaussSeidel);
    CHECK(cfg.solver.sweep_order == SweepOrder::Symmetric);
    CHECK_FALSE(cfg.solver.accelerate);
    CHECK(cfg.evolve.T == 2.0);
    CHECK(cfg.evolve.decay_check);
    CHECK(cfg.mpcheck.seeds == std::vector<std::string>{"bump", "exp(-r)"});
    CHECK(*cfg.mpcheck.lambda_offset == -0.1);
    CHECK(cfg.out_dir == "results");

    const Inputs in = materialize(cfg);
    CHECK(in.grid->ring_multiple() == 2);
    CHECK(in.c.size() == in.grid->active_count());
}

TEST_CASE("sign-changing preset") {
    const RunConfig cfg = build_run_config(RawConfig::parse("domain.type = disk\ncoeff.c_preset = example43\n"));
    REQUIRE(cfg.example43.has_value());
    CHECK(cfg.example43->beta2 == doctest::Approx(0.5 * example_43_bound(Example43Params{})));
    cfg.example43->validate();
    const Inputs in = materialize(cfg);
    CHECK(in.c.max() > 0.0);
    CHECK(in.c.min() < 0.0);
}

TEST_CASE("errors carry byte offsets") {
    CHECK(offset_of("grid.h = 0.1\ngrid.h = 0.2\n") == 13);
    CHECK(offset_of("grid.h = 0.1\nbogus.key = 1\n") == 13);
    CHECK(offset_of("coeff.c = 2*z\n") == 12);
    CHECK(offset_of("coeff.c = (1 +\n") == 14);
    CHECK(offset_of("grid.h = -1\n") == 9);
    CHECK(offset_of("domain.type = sphere\n") == 14);
    CHECK(offset_of("grid.s = 1.5\n") == 9);
    CHECK(offset_of("no equals sign\n") == 0);
    CHECK(offset_of("Grid.H = 1\n") == 0);
    CHECK(offset_of("grid.h =\n") == 8);
    CHECK(offset_of("solver.accelerate = maybe\n") == 20);
}

TEST_CASE("overrides") {
    RawConfig raw = RawConfig::parse("coeff.c = -3\n");
    raw.set("coeff.c=-2");
    raw.set("grid.h = 1/8");
    const RunConfig cfg = build_run_config(raw);
    CHECK(cfg.c == "-2");
    CHECK(cfg.h == 0.125);

    RawConfig bad = RawConfig::parse("");
    bad.set("grid.h=abc");
    try {
        build_run_config(bad);
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("--set 'grid.h=abc'") != std::string::npos);
    }
    CHECK_THROWS_AS(bad.set("novalue"), ConfigError);
}

TEST_CASE("missing config file") {
    CHECK_THROWS_AS(load_run_config("/nonexistent/infeig.cfg", {}), ConfigError);
}

TEST_CASE("seeds") {
    const GridPtr g = make_grid(Domain(Disk{}), 1.0 / 8, 1);
    CHECK(seed_field("constant", *g, nullptr).min() == 1.0);
    CHECK(seed_field("bump", *g, nullptr).max() == doctest::Approx(1.0));
    CHECK(seed_field("2 + x", *g, nullptr).min() > 0.0);
    const ScalarField phi = ScalarField::constant(*g, 0.5);
    CHECK(seed_field("eigenfunction", *g, &phi) == phi);
    CHECK_THROWS(seed_field("eigenfunction", *g, nullptr));
}

TEST_CASE("exit codes for library errors") {
    CHECK(exit_code_for(NoConvergence(1, 1.0)) == kSolverFailure);
    CHECK(exit_code_for(DivergenceError(1, 1.0)) == kSolverFailure);
    CHECK(exit_code_for(BracketFailure("x")) == kSolverFailure);
    CHECK(exit_code_for(Inconclusive(1.0)) == kSolverFailure);
    CHECK(exit_code_for(NotCoercive(1.0)) == kSolverFailure);
    CHECK(exit_code_for(ConfigError(0, "x")) == kConfigError);
    CHECK(exit_code_for(InvalidParams("x")) == kConfigError);
}
