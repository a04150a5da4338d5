#include <doctest.h>

#include <cmath>

#include "infeig/errors.hpp"
#include "infeig/expr.hpp"
#include "infeig/oracles.hpp"
#include "infeig/steady_solver.hpp"
#include "support.hpp"

using namespace infeig;

namespace {

ScalarField field(const Grid& g, const std::string& src) {
    const expr::Ast ast = expr::parse(src);
    return ScalarField::sample(g, [&](const Point& p) { return ast.eval(p, g.domain().center()); });
}

SteadyProblem problem(const GridPtr& g, const ScalarField& c, const ScalarField& rhs, double lambda) {
    return SteadyProblem(g, VectorField::zero(*g), c, rhs, lambda);
}

Example43Params params() {
    Example43Params p;
    p.beta2 = 0.5 * example_43_bound(p);
    return p;
}

}  // namespace

TEST_CASE("config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    cfg = SolverConfig{};
    cfg.blowup_threshold = 0.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    cfg = SolverConfig{};
    cfg.max_outer = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
}

TEST_CASE("coercive solve of constants") {
    const GridPtr g = test::disk(1.0 / 16);
    const SteadySolution s = solve_negative_c(
        problem(g, ScalarField::constant(*g, -2.0), ScalarField::constant(*g, -2.0), 0.0), SolverConfig{});
    CHECK((s.u - ScalarField::constant(*g, 1.0)).sup_norm() <= 1e-9);
}

TEST_CASE("coercive solve is independent of the initial guess") {
    const GridPtr g = test::disk(1.0 / 16);
    const SolverConfig cfg;
    const SteadyProblem p = problem(g, ScalarField::constant(*g, -1.0), field(*g, "-exp(-5*r)"), 0.0);
    const ScalarField ten = ScalarField::constant(*g, 10.0);
    const SteadySolution a = solve_negative_c(p, cfg);
    const SteadySolution b = solve_negative_c(p, cfg, &ten);
    CHECK((a.u - b.u).sup_norm() <= 2 * cfg.tol);
    CHECK(a.residual <= cfg.tol);
    // barrier |g|/c0
    CHECK(a.u.sup_norm() <= 1.0 + cfg.tol);
}

TEST_CASE("manufactured Neumann solution in 1D") {
    double prev = INFINITY;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const GridPtr g = test::interval(h);
        const SteadyProblem p =
            problem(g, ScalarField::constant(*g, -1.0), field(*g, "6 - 12*x - x^2*(3 - 2*x)"), 0.0);
        const SteadySolution s = solve_negative_c(p, SolverConfig{});
        const double err = (s.u - field(*g, "x^2*(3 - 2*x)")).sup_norm();
        CHECK(err <= 2.0 * h);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("not coercive") {
    const GridPtr g = test::interval(1.0 / 8);
    CHECK_THROWS_AS(solve_negative_c(problem(g, ScalarField::constant(*g, -1.0), ScalarField(g->active_count()), 1.0),
                                     SolverConfig{}),
                    NotCoercive);
}

TEST_CASE("gauss-seidel and policy iteration agree") {
    const GridPtr g = test::disk(1.0 / 16, 2);
    const SteadyProblem p(g, test::Gen(2).vector_field(*g, 1.0), field(*g, "-1 - 0.5*sin(3*x)"),
                          field(*g, "cos(2*y) - x"), 0.0);
    SolverConfig gs;
    gs.inner = InnerMethod::GaussSeidel;
    SolverConfig sym = gs;
    sym.sweep_order = SweepOrder::Symmetric;
    const SteadySolution a = solve_negative_c(p, SolverConfig{});
    const SteadySolution b = solve_negative_c(p, gs);
    const SteadySolution c = solve_negative_c(p, sym);
    CHECK((a.u - b.u).sup_norm() <= 1e-8);
    CHECK((a.u - c.u).sup_norm() <= 1e-8);
}

TEST_CASE("gauss-seidel runs out of sweeps") {
    const GridPtr g = test::disk(1.0 / 16);
    SolverConfig cfg;
    cfg.inner = InnerMethod::GaussSeidel;
    cfg.max_sweeps = 2;
    CHECK_THROWS_AS(
        solve_negative_c(problem(g, ScalarField::constant(*g, -0.01), field(*g, "x"), 0.0), cfg), NoConvergence);
}

TEST_CASE("monotone iteration examples") {
    const GridPtr g = test::disk(1.0 / 16);
    const SolverConfig cfg;
    const ScalarField zero(g->active_count());
    const ScalarField minus_one = ScalarField::constant(*g, -1.0);

    const IterationOutcome a = monotone_iteration(problem(g, zero, minus_one, -1.0), cfg);
    REQUIRE(a.converged());
    CHECK((a.solution().u - ScalarField::constant(*g, 1.0)).sup_norm() <= 1e-8);

    const IterationOutcome b = monotone_iteration(problem(g, zero, minus_one, 0.5), cfg);
    REQUIRE_FALSE(b.converged());
    CHECK(b.divergence().sup_norm >= cfg.blowup_for(1.0));

    const IterationOutcome c = monotone_iteration(g, VectorField::zero(*g), ScalarField::constant(*g, -2.0), 1.0,
                                                  minus_one, cfg);
    REQUIRE(c.converged());
    CHECK((c.solution().u - ScalarField::constant(*g, 1.0)).sup_norm() <= 1e-8);
}

TEST_CASE("monotone iteration rejects positive g") {
    const GridPtr g = test::interval(1.0 / 8);
    CHECK_THROWS_AS(monotone_iteration(problem(g, ScalarField(g->active_count()), field(*g, "x - 0.5"), -1.0),
                                       SolverConfig{}),
                    InvalidParams);
}

TEST_CASE("monotone iteration is nondecreasing and positive") {
    const GridPtr g = test::disk(1.0 / 16);
    const ScalarField c = make_sign_changing_c(params(), *g);
    SolverConfig cfg;
    cfg.accelerate = false;
    MonotoneOptions opt;
    opt.record_iterates = true;
    const IterationOutcome it = monotone_iteration(problem(g, c, field(*g, "-exp(-20*r^2)"), 0.0), cfg, opt);
    REQUIRE(it.converged());
    for (std::size_t n = 1; n < it.stats.iterates.size(); ++n)
        CHECK((it.stats.iterates[n] - it.stats.iterates[n - 1]).min() >= -1e-10);
    CHECK(it.solution().u.min() > 1e-8);
    CHECK(it.solution().residual <= cfg.tol);
}

TEST_CASE("accelerated iteration reaches the same fixed point") {
    const GridPtr g = test::disk(1.0 / 16);
    const ScalarField c = make_sign_changing_c(params(), *g);
    const SteadyProblem p = problem(g, c, ScalarField::constant(*g, -1.0), 0.1);
    SolverConfig plain;
    plain.accelerate = false;
    const IterationOutcome a = monotone_iteration(p, SolverConfig{});
    const IterationOutcome b = monotone_iteration(p, plain);
    REQUIRE(a.converged());
    REQUIRE(b.converged());
    CHECK((a.solution().u - b.solution().u).sup_norm() <= 1e-7 * a.solution().u.sup_norm());
    CHECK(a.stats.outer_steps <= b.stats.outer_steps);
}

TEST_CASE("comparison in the right-hand side") {
    const GridPtr g = test::disk(1.0 / 16);
    const ScalarField c = make_sign_changing_c(params(), *g);
    const SolverConfig cfg;
    const IterationOutcome lo = monotone_iteration(problem(g, c, field(*g, "-1 - exp(-5*r)"), 0.0), cfg);
    const IterationOutcome hi = monotone_iteration(problem(g, c, field(*g, "-1"), 0.0), cfg);
    REQUIRE(lo.converged());
    REQUIRE(hi.converged());
    CHECK((lo.solution().u - hi.solution().u).min() >= -2 * cfg.tol);
}

TEST_CASE("general right-hand side") {
    const GridPtr g = test::interval(1.0 / 32);
    const SolverConfig cfg;
    const ScalarField minus_one = ScalarField::constant(*g, -1.0);

    const SteadySolution zero = solve_general_rhs(problem(g, minus_one, ScalarField(g->active_count()), 0.0), cfg);
    CHECK(zero.u.sup_norm() <= cfg.tol);

    const SteadyProblem sine = problem(g, minus_one, field(*g, "sin(3*x)"), 0.0);
    const SteadySolution s = solve_general_rhs(sine, cfg);
    CHECK(s.residual <= cfg.tol);
    CHECK(dense_residual_oracle(sine, s.u).sup_norm() <= 2 * cfg.tol);

    const SteadySolution one = solve_general_rhs(problem(g, minus_one, ScalarField::constant(*g, 1.0), 0.0), cfg);
    CHECK((one.u + ScalarField::constant(*g, 1.0)).sup_norm() <= 1e-8);
}

TEST_CASE("general right-hand side with a sign-changing c") {
    const GridPtr g = test::disk(1.0 / 16);
    const ScalarField c = make_sign_changing_c(params(), *g);
    const SolverConfig cfg;
    const SteadyProblem p = problem(g, c, field(*g, "x - 0.2*y"), 0.0);
    const SteadySolution s = solve_general_rhs(p, cfg);
    CHECK(apply_operator(p, s.u).sup_norm() <= cfg.tol);
}

TEST_CASE("general right-hand side above the eigenvalue diverges") {
    const GridPtr g = test::interval(1.0 / 16);
    CHECK_THROWS_AS(solve_general_rhs(problem(g, ScalarField(g->active_count()), field(*g, "x - 0.5"), 0.5),
                                      SolverConfig{}),
                    DivergenceError);
}

TEST_CASE("bit-identical reruns") {
    const GridPtr g = test::disk(1.0 / 16, 2);
    const SteadyProblem p = problem(g, field(*g, "-1 + 0.5*sin(3*x)"), field(*g, "-exp(-r)"), 0.2);
    const IterationOutcome a = monotone_iteration(p, SolverConfig{});
    const IterationOutcome b = monotone_iteration(p, SolverConfig{});
    REQUIRE(a.converged());
    REQUIRE(b.converged());
    CHECK(a.solution().u == b.solution().u);
}

TEST_CASE("coercive solver reuse across right-hand sides") {
    const GridPtr g = test::annulus(1.0 / 16);
    const ScalarField z = field(*g, "-1 - r");
    CoerciveSolver solver(*g, VectorField::zero(*g), z.values(), -0.5, SolverConfig{});
    CHECK(solver.coercivity() == doctest::Approx(1.5 + 0.25).epsilon(0.05));
    test::Gen gen(4);
    for (int i = 0; i < 3; ++i) {
        const ScalarField rhs = gen.field(*g, -1, 1);
        const SteadySolution s = solver.solve(rhs.values(), ScalarField(g->active_count()), 1e-10);
        CHECK(s.residual <= 1e-10);
        CHECK(s.u.sup_norm() <= rhs.sup_norm() / solver.coercivity() + 1e-9);
    }
}
