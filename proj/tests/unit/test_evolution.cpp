#include <doctest.h>

#include <cmath>

#include "infeig/errors.hpp"
#include "infeig/evolution.hpp"
#include "infeig/expr.hpp"
#include "support.hpp"

using namespace infeig;

namespace {

SteadyProblem homogeneous(const GridPtr& g, const ScalarField& c, const VectorField* b = nullptr) {
    return SteadyProblem(g, b ? *b : VectorField::zero(*g), c, ScalarField(g->active_count()), 0.0);
}

// h + dt (Δ∞h + b·Dh + (c+λ)h - g) straight from the ring and axis closures
ScalarField euler_reference(const Grid& g, const SteadyProblem& p, const ScalarField& u, double dt) {
    ScalarField out(u.size());
    const double rho2 = g.ring_radius() * g.ring_radius();
    const auto scale = g.ring_scales();
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto ring = g.ring(k);
        double hi = -INFINITY, lo = INFINITY;
        for (std::size_t j = 0; j < ring.size(); ++j) {
            const double v = scale[j] * (g.closure_value(ring[j], u.values()) - u[k]);
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
        double r = (hi + lo) / rho2;
        const double b = p.b()(k, 0);
        if (b > 0) r += b * (g.closure_value(g.axis_neighbor(k, 0, 1), u.values()) - u[k]) / g.spacing();
        if (b < 0) r += b * (u[k] - g.closure_value(g.axis_neighbor(k, 0, -1), u.values())) / g.spacing();
        r += (p.c()[k] + p.lambda()) * u[k] - p.g()[k];
        out[k] = u[k] + dt * r;
    }
    return out;
}

}  // namespace

TEST_CASE("one step on constants and on zero") {
    const GridPtr g = test::disk(1.0 / 8);
    const SteadyProblem p = homogeneous(g, ScalarField::constant(*g, -1.0));
    const double dt = 0.5 * cfl_limit(p);
    const ScalarField next = step_explicit(ScalarField::constant(*g, 2.0), p, dt);
    CHECK((next - ScalarField::constant(*g, 2.0 * (1.0 - dt))).sup_norm() <= 1e-15);
    CHECK(step_explicit(ScalarField(g->active_count()), p, dt).sup_norm() == 0.0);
}

TEST_CASE("step matches a dense re-evaluation on nine nodes") {
    const GridPtr g = make_grid(Domain(Interval{0.0, 1.0}), 0.125, 1);
    REQUIRE(g->active_count() == 9);
    test::Gen gen(8);
    for (int trial = 0; trial < 20; ++trial) {
        const VectorField b = gen.vector_field(*g, 2);
        const SteadyProblem p(g, b, gen.field(*g, -1, 1), gen.field(*g, -1, 1), gen.uniform(-0.5, 0.5));
        const ScalarField u = gen.field(*g, -1, 1);
        const double dt = 0.9 * cfl_limit(p);
        CHECK((step_explicit(u, p, dt) - euler_reference(*g, p, u, dt)).sup_norm() <= 1e-14);
    }
}

TEST_CASE("cfl limit and violation") {
    const GridPtr g = test::disk(1.0 / 8, 2);
    const SteadyProblem p = homogeneous(g, ScalarField::constant(*g, -2.0));
    const double rho = g->ring_radius();
    CHECK(cfl_limit(p) == doctest::Approx(1.0 / (2.0 * g->max_ring_scale() / (rho * rho) + 2.0)));
    CHECK_THROWS_AS(step_explicit(ScalarField::constant(*g, 1.0), p, 1.01 * cfl_limit(p)), CflViolation);
}

TEST_CASE("exponential decay of constants") {
    const GridPtr g = test::interval(1.0 / 32);
    const SteadyProblem p = homogeneous(g, ScalarField::constant(*g, -1.0));
    const EvolutionTrace tr = run_evolution(ScalarField::constant(*g, 2.0), p, 5.0);
    CHECK(tr.times.back() == doctest::Approx(5.0));
    // (1 - dt)^(T/dt) against e^-T
    CHECK(std::abs(tr.final_state.max() - 2.0 * std::exp(-5.0)) <= 5.0 * tr.dt * 2.0 * std::exp(-5.0));
    CHECK(tr.fitted_rate == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(tr.cfl_margin >= 0.0);
    for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
    // Euler error bound (dt/2) c0² T |h0|
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        CHECK(std::abs(tr.sup_norm[i] - 2.0 * std::exp(-tr.times[i])) <= 0.5 * tr.dt * 5.0 * 2.0 + 1e-15);
}

TEST_CASE("nonpositive data stays nonpositive") {
    const GridPtr g = test::disk(1.0 / 8);
    const expr::Ast c = expr::parse("-1 - 0.5*sin(3*x)");
    const SteadyProblem p = homogeneous(g, ScalarField::sample(*g, [&](const Point& x) { return c.eval(x, {0, 0}); }));
    test::Gen gen(9);
    const ScalarField h0 = gen.field(*g, -1, 0);
    const EvolutionTrace tr = run_evolution(h0, p, 1.0);
    for (const auto& s : tr.snapshots) CHECK(s.max() <= 0.0);
}

TEST_CASE("comparison and nonexpansiveness") {
    const GridPtr g = test::annulus(1.0 / 8, 2);
    test::Gen gen(10);
    const VectorField b = gen.vector_field(*g, 1);
    const SteadyProblem p = homogeneous(g, gen.field(*g, -1, 1), &b);
    const double dt = 0.9 * cfl_limit(p);
    const double zsup = p.c_sup();
    for (int trial = 0; trial < 20; ++trial) {
        ScalarField h = gen.field(*g, -1, 1);
        ScalarField k = h;
        for (double& v : k.raw()) v += gen.uniform(0, 0.3);
        for (int step = 0; step < 20; ++step) {
            const double before = (h - k).sup_norm();
            h = step_explicit(h, p, dt);
            k = step_explicit(k, p, dt);
            CHECK((k - h).min() >= -1e-14);
            CHECK((h - k).sup_norm() <= (1.0 + dt * zsup) * before + 1e-14);
        }
    }
}

TEST_CASE("log-rate fit") {
    std::vector<double> t, s;
    for (int i = 0; i <= 10; ++i) {
        t.push_back(i);
        s.push_back(3.0 * std::exp(-0.7 * i));
    }
    CHECK(fit_log_rate(t, s, 0.0) == doctest::Approx(-0.7));
    CHECK(fit_log_rate(t, s, 5.0) == doctest::Approx(-0.7));
    CHECK(std::isnan(fit_log_rate({1.0}, {1.0}, 0.0)));
    s.back() = 0.0;
    CHECK(fit_log_rate(t, s, 0.0) == doctest::Approx(-0.7));
}

TEST_CASE("weighted decay bound") {
    const GridPtr g = test::interval(1.0 / 16);
    const SteadyProblem p = homogeneous(g, ScalarField::constant(*g, -1.0));
    const ScalarField one = ScalarField::constant(*g, 1.0);
    const ScalarField h0 = ScalarField::constant(*g, 2.0);
    EvolutionConfig cfg;
    cfg.weight = &one;
    cfg.weight_rate = 1.0;
    const EvolutionTrace tr = run_evolution(h0, p, 3.0, cfg);
    const DecayCheck dc = check_decay_bound(tr, one, 1.0, h0);
    CHECK(dc.pass);
    CHECK(dc.slack <= 1e-8);
    CHECK(dc.rhs == 2.0);
    REQUIRE_FALSE(tr.weighted_ratio.empty());
    CHECK(tr.weighted_ratio.front() == 2.0);

    const ScalarField neg = ScalarField::constant(*g, -1.0);
    const DecayCheck dn = check_decay_bound(run_evolution(neg, p, 1.0), one, 1.0, neg);
    CHECK(dn.pass);
    CHECK(dn.slack == 0.0);

    CHECK_THROWS_AS(check_decay_bound(tr, ScalarField(g->active_count()), 1.0, h0), NonpositiveWeight);
}
