#include "infeig_app/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "infeig/eigensolver.hpp"
#include "infeig/errors.hpp"
#include "infeig/evolution.hpp"
#include "infeig/expr.hpp"
#include "infeig/oracles.hpp"

namespace infeig::app {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

CheckResult at_most(std::string name, double value, double limit, std::string detail = {}) {
    return {std::move(name), std::isfinite(value) && value <= limit, value, limit, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double limit, std::string detail = {}) {
    return {std::move(name), std::isfinite(value) && value >= limit, value, limit, std::move(detail)};
}

CheckResult truth(std::string name, bool ok, double value, std::string detail = {}) {
    return {std::move(name), ok, value, 0.0, std::move(detail)};
}

GridPtr disk(double h, int s = 1) { return make_grid(Domain(Disk{{0.0, 0.0}, 1.0}), h, s); }
GridPtr interval(double h, int s = 1) { return make_grid(Domain(Interval{0.0, 1.0}), h, s); }

Example43Params example43() {
    Example43Params p;
    p.R = 1.0;
    p.eps = 0.05;
    p.rho = 0.2;
    p.beta1 = 1.0;
    p.k = 5.0;
    p.beta2 = 0.5 * example_43_bound(p);
    return p;
}

ScalarField from_expr(const Grid& grid, const std::string& src) {
    const expr::Ast ast = expr::parse(src);
    const Point center = grid.domain().center();
    return ScalarField::sample(grid, [&](const Point& p) { return ast.eval(p, center); });
}

ScalarField plus(const ScalarField& c, double s) {
    ScalarField out = c;
    for (double& v : out.raw()) v += s;
    return out;
}

ScalarField bump(const Grid& grid) { return from_expr(grid, "exp(-20*r^2)"); }

bool ghost_free(const Grid& grid, std::size_t k) {
    for (const auto& ref : grid.ring(k))
        if (ref.ghost) return false;
    return true;
}

constexpr double kBisectTol = 1e-4;

// ---------------------------------------------------------------------------

void constant_eigenvalue(CriterionResult& out) {
    for (double c0 : {-3.0, 0.0, 2.0}) {
        for (int which = 0; which < 2; ++which) {
            const auto t0 = Clock::now();
            const GridPtr g = which == 0 ? interval(1.0 / 64) : disk(1.0 / 32);
            const std::string tag = "[c0=" + fmt(c0) + (which == 0 ? ",interval]" : ",disk]");
            const EigenEstimate est =
                estimate_lambda_bar(g, VectorField::zero(*g), ScalarField::constant(*g, c0), SolverConfig{}, kBisectTol);
            double phi_err = 0.0;
            for (double v : est.eigenfunction.values()) phi_err = std::max(phi_err, std::abs(v - 1.0));
            out.checks.push_back(at_most("lambda_error" + tag, std::abs(est.lambda_bar + c0), kBisectTol,
                                         "lambda_bar=" + fmt(est.lambda_bar)));
            out.checks.push_back(at_most("phi_error" + tag, phi_err, 1e-6));
            out.checks.push_back(at_most("runtime" + tag, since(t0), 30.0));
        }
    }
}

void bound_and_shift(CriterionResult& out) {
    const auto t0 = Clock::now();
    const GridPtr g = disk(1.0 / 32);
    const VectorField b = VectorField::zero(*g);
    const std::map<std::string, ScalarField> fields{
        {"sign_changing", make_sign_changing_c(example43(), *g)},
        {"sine", from_expr(*g, "-1 + 0.5*sin(3*x)")},
    };
    for (const auto& [name, c] : fields) {
        const EigenEstimate base = estimate_lambda_bar(g, b, c, SolverConfig{}, kBisectTol);
        out.checks.push_back(at_most("upper_bound[" + name + "]", base.lambda_bar - c.sup_norm(), kBisectTol,
                                     "lambda_bar=" + fmt(base.lambda_bar) + " |c|=" + fmt(c.sup_norm())));
        for (double s : {-2.0, 1.0, 5.0}) {
            const EigenEstimate sh = estimate_lambda_bar(g, b, plus(c, s), SolverConfig{}, kBisectTol);
            out.checks.push_back(at_most("shift[" + name + ",s=" + fmt(s) + "]",
                                         std::abs(sh.lambda_bar - (base.lambda_bar - s)), 2 * kBisectTol));
        }
    }
    out.checks.push_back(at_most("runtime", since(t0), 300.0));
}

void sign_changing_example(CriterionResult& out) {
    const auto t0 = Clock::now();
    const Example43Params p = example43();
    const GridPtr g = disk(1.0 / 32);
    const ScalarField c = make_sign_changing_c(p, *g);
    out.checks.push_back(truth("c_changes_sign", c.min() < 0.0 && c.max() > 0.0, c.max(),
                               "min=" + fmt(c.min()) + " max=" + fmt(c.max())));
    const EigenEstimate est = estimate_lambda_bar(g, VectorField::zero(*g), c, SolverConfig{}, kBisectTol);
    out.checks.push_back(truth("lambda_bar_positive", est.lambda_lo > 0.0 && est.lambda_bar >= kBisectTol,
                               est.lambda_bar, "bracket=[" + fmt(est.lambda_lo) + "," + fmt(est.lambda_hi) + "]"));

    auto bound_with = [&](double rho, double k, double beta1, double eps) {
        Example43Params q = p;
        q.rho = rho;
        q.k = k;
        q.beta1 = beta1;
        q.eps = eps;
        return example_43_bound(q);
    };
    auto monotone = [](const std::vector<double>& v, bool increasing) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
        return true;
    };
    std::vector<double> up, beta, wall;
    for (double rho : {0.1, 0.05, 0.025}) up.push_back(bound_with(rho, 1.0 / rho, p.beta1, p.eps));
    for (double b1 : {1.0, 0.1, 0.01}) beta.push_back(bound_with(p.rho, p.k, b1, p.eps));
    for (double rho : {0.9, 0.99, 0.999}) wall.push_back(bound_with(rho, p.k, p.beta1, 0.5 * (p.R - rho)));
    out.checks.push_back(truth("bound_grows_as_rho_to_0", monotone(up, true), up.back(),
                               fmt(up[0]) + " < " + fmt(up[1]) + " < " + fmt(up[2])));
    out.checks.push_back(truth("bound_vanishes_as_beta1_to_0", monotone(beta, false), beta.back(),
                               fmt(beta[0]) + " > " + fmt(beta[1]) + " > " + fmt(beta[2])));
    out.checks.push_back(truth("bound_vanishes_as_rho_to_R", monotone(wall, false), wall.back(),
                               fmt(wall[0]) + " > " + fmt(wall[1]) + " > " + fmt(wall[2])));
    out.checks.push_back(at_most("runtime", since(t0), 300.0));
}

void maximum_principle_threshold(CriterionResult& out) {
    const auto t0 = Clock::now();
    const GridPtr g = disk(1.0 / 16);
    const VectorField b = VectorField::zero(*g);
    const ScalarField c = make_sign_changing_c(example43(), *g);
    const EigenEstimate est = estimate_lambda_bar(g, b, c, SolverConfig{}, kBisectTol);

    MaxPrincipleOptions opt;
    opt.decay_threshold = 1e-6;
    opt.blowup = 1e3;
    opt.t_max = 1000.0;
    opt.lambda_bar = est.lambda_bar;

    const std::vector<ScalarField> seeds{bump(*g), ScalarField::constant(*g, 1.0), est.eigenfunction};
    const MaxPrincipleReport below = check_maximum_principle(g, b, c, est.lambda_bar - 0.1, seeds, SolverConfig{}, opt);
    double worst = 0.0;
    bool all_hold = true;
    for (const auto& s : below.seeds) {
        worst = std::max(worst, s.final_max);
        all_hold &= s.verdict == MpVerdict::Holds;
    }
    out.checks.push_back(truth("decay_below_threshold", all_hold && worst <= 1e-6, worst,
                               "lambda=" + fmt(below.lambda)));

    const MaxPrincipleReport above =
        check_maximum_principle(g, b, c, est.lambda_bar + 0.1, {est.eigenfunction}, SolverConfig{}, opt);
    const SeedResult& s = above.seeds.front();
    out.checks.push_back(truth("eigenfunction_grows_above", s.verdict == MpVerdict::Fails && s.final_max >= 1e3,
                               s.final_max, "t=" + fmt(s.time)));
    out.checks.push_back(at_most("runtime", since(t0), 300.0));
}

// --- operator correctness ---------------------------------------------------

double cone_error(double h, int s, double r_min_abs, double r_min_rho) {
    const GridPtr g = disk(h, s);
    const Point x0{0.1234, -0.0567};
    const ScalarField u = ScalarField::sample(*g, [&](const Point& p) { return std::hypot(p[0] - x0[0], p[1] - x0[1]); });
    const double r_min = std::max(r_min_abs, r_min_rho * g->ring_radius());
    double worst = 0.0;
    for (std::size_t k = 0; k < g->active_count(); ++k) {
        const Point& p = g->active_coordinate(k);
        if (std::hypot(p[0] - x0[0], p[1] - x0[1]) < r_min || !ghost_free(*g, k)) continue;
        worst = std::max(worst, std::abs(inf_laplacian(*g, u.values(), k)));
    }
    return worst;
}

struct RadialSample {
    double error = 0.0;
    double model = 0.0;
};

// φ(r) = r³ on Annulus(0, 0.25, 1); the reference φ'' comes from centered
// differences of radial samples
RadialSample radial_error(double h, int s) {
    const GridPtr g = make_grid(Domain(Annulus{{0.0, 0.0}, 0.25, 1.0}), h, s);
    auto phi = [](double r) { return r * r * r; };
    const ScalarField u = ScalarField::sample(*g, [&](const Point& p) { return phi(std::hypot(p[0], p[1])); });
    const double rho = g->ring_radius();
    const double dr = 1e-3;
    RadialSample out;
    for (std::size_t k = 0; k < g->active_count(); ++k) {
        const Point& p = g->active_coordinate(k);
        const double r = std::hypot(p[0], p[1]);
        if (r < 0.25 + 2 * rho || r > 1.0 - 2 * rho) continue;
        const std::vector<double> samples{phi(r - dr), phi(r), phi(r + dr)};
        const double ref = radial_inf_laplacian_reference(samples, dr).front();
        out.error = std::max(out.error, std::abs(inf_laplacian(*g, u.values(), k) - ref));
    }
    out.model = h / rho + rho * rho * 6.0 + rho;
    return out;
}

void operator_correctness(CriterionResult& out) {
    const auto t0 = Clock::now();

    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double idem = 0.0, homog = 0.0, range = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 1 + trial % 3;
        std::vector<double> p(static_cast<std::size_t>(dim));
        const double scale = std::pow(10.0, -3.0 + 6.0 * unit(rng));
        for (double& v : p) v = scale * normal(rng);
        const Eigen::MatrixXd S = sigma(p);
        idem = std::max(idem, (S * S - S).cwiseAbs().maxCoeff());
        double t = std::pow(10.0, -2.0 + 4.0 * unit(rng));
        if (unit(rng) < 0.5) t = -t;
        std::vector<double> tp = p;
        for (double& v : tp) v *= t;
        homog = std::max(homog, (sigma(tp) - S).cwiseAbs().maxCoeff());
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues();
        range = std::max({range, -ev.minCoeff(), ev.maxCoeff() - 1.0});
    }
    out.checks.push_back(at_most("sigma_idempotent", idem, 1e-12));
    out.checks.push_back(at_most("sigma_homogeneous", homog, 1e-12));
    out.checks.push_back(at_most("sigma_between_0_and_I", range, 1e-12));

    double quad = 0.0;
    for (int s : {1, 2, 3}) {
        const GridPtr g = interval(1.0 / 64, s);
        for (const auto& [src, second] : std::vector<std::pair<std::string, double>>{{"x^2", 2.0}, {"3*x^2 - 2*x + 1", 6.0}}) {
            const ScalarField u = from_expr(*g, src);
            for (std::size_t k = 0; k < g->active_count(); ++k)
                if (ghost_free(*g, k)) quad = std::max(quad, std::abs(inf_laplacian(*g, u.values(), k) - second));
        }
    }
    out.checks.push_back(at_most("quadratic_exact_1d", quad, 0.0));

    const double cone = cone_error(1.0 / 64, 4, 0.0, 4.0);
    const double cone_half = cone_error(1.0 / 128, 4, 0.0, 4.0);
    out.checks.push_back(at_most("cone_bound", cone, 0.05, "h=1/64 s=4, |x-x0|>=4rho"));
    out.checks.push_back(at_most("cone_halving", cone_half / cone, 0.6,
                                 "err(h/2)=" + fmt(cone_half) + " err(h)=" + fmt(cone)));
    const double fixed = cone_error(1.0 / 64, 4, 0.5, 0.0);
    const double fixed_fine = cone_error(1.0 / 256, 8, 0.5, 0.0);
    out.checks.push_back(at_most("cone_halving_h/4_2s", fixed_fine / fixed, 0.6,
                                 "|x-x0|>=0.5: " + fmt(fixed) + " -> " + fmt(fixed_fine)));

    std::vector<RadialSample> radial;
    for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) radial.push_back(radial_error(h, 2));
    double cmin = INFINITY, cmax = 0.0;
    for (const auto& r : radial) {
        cmin = std::min(cmin, r.error / r.model);
        cmax = std::max(cmax, r.error / r.model);
    }
    out.checks.push_back(at_most("radial_error_model", cmax / cmin, 2.0,
                                 "C in [" + fmt(cmin) + "," + fmt(cmax) + "] for h/rho + 6rho^2 + rho"));
    out.checks.push_back(at_most("radial_halving", radial[2].error / radial[1].error, 0.6,
                                 "err=" + fmt(radial[0].error) + "," + fmt(radial[1].error) + "," +
                                     fmt(radial[2].error)));
    out.checks.push_back(at_most("runtime", since(t0), 60.0));
}

// --- solver properties -------------------------------------------------------

void solver_properties(CriterionResult& out) {
    const auto t0 = Clock::now();
    const SolverConfig cfg;
    const GridPtr g = disk(1.0 / 16);
    const VectorField b = VectorField::zero(*g);
    const ScalarField c = make_sign_changing_c(example43(), *g);
    const ScalarField minus_one = ScalarField::constant(*g, -1.0);

    {
        const SteadyProblem prob(g, b, c, minus_one, 0.0);
        const ScalarField low = ScalarField::constant(*g, -1.0);
        MonotoneOptions from_low;
        from_low.start = &low;
        const IterationOutcome a = monotone_iteration(prob, cfg);
        const IterationOutcome z = monotone_iteration(prob, cfg, from_low);
        const bool ok = a.converged() && z.converged();
        const double diff = ok ? (a.solution().u - z.solution().u).sup_norm() : INFINITY;
        out.checks.push_back(at_most("uniqueness[sign_changing]", diff, 2 * cfg.tol));

        const SteadyProblem coercive(g, b, from_expr(*g, "-1 + 0.5*sin(3*x)"), from_expr(*g, "cos(2*y)"), 0.0);
        ScalarField noise(g->active_count());
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (double& v : noise.raw()) v = u(rng);
        const SteadySolution s0 = solve_negative_c(coercive, cfg);
        const SteadySolution s1 = solve_negative_c(coercive, cfg, &noise);
        out.checks.push_back(at_most("uniqueness[coercive]", (s0.u - s1.u).sup_norm(), 2 * cfg.tol));
    }
    {
        SolverConfig plain = cfg;
        plain.accelerate = false;
        MonotoneOptions rec;
        rec.record_iterates = true;
        const SteadyProblem prob(g, b, c, minus_one, 0.5);
        const IterationOutcome it = monotone_iteration(prob, plain, rec);
        double worst = INFINITY;
        for (std::size_t n = 1; n < it.stats.iterates.size(); ++n) {
            const ScalarField d = it.stats.iterates[n] - it.stats.iterates[n - 1];
            worst = std::min(worst, d.min() / std::max(1.0, it.stats.iterates[n].sup_norm()));
        }
        out.checks.push_back(at_least("monotone_sequence", it.converged() ? worst : -INFINITY, -1e-12,
                                      std::to_string(it.stats.outer_steps) + " outer steps"));
    }
    {
        const ScalarField g_bump = from_expr(*g, "-exp(-20*r^2)");
        const IterationOutcome a = monotone_iteration(SteadyProblem(g, b, c, g_bump, 0.0), cfg);
        const double m = a.converged() ? a.solution().u.min() : -INFINITY;
        out.checks.push_back(at_least("positivity[sign_changing]", m, 1e-8));
        const SteadySolution s = solve_negative_c(SteadyProblem(g, b, from_expr(*g, "-1 + 0.5*sin(3*x)"), g_bump, 0.0), cfg);
        out.checks.push_back(at_least("positivity[coercive]", s.u.min(), 1e-8));
    }
    {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const std::vector<std::pair<std::string, GridPtr>> grids{
            {"interval", interval(1.0 / 14, 2)},
            {"disk", disk(1.0 / 7, 1)},
            {"annulus", make_grid(Domain(Annulus{{0.0, 0.0}, 0.25, 1.0}), 1.0 / 7, 2)},
            {"rectangle", make_grid(Domain(Rectangle{{0.0, 0.0}, {1.0, 1.0}}), 1.0 / 14, 2)},
        };
        for (const auto& [name, grid] : grids) {
            const auto shape = grid->lattice_shape();
            double worst = 0.0;
            for (int trial = 0; trial < 20; ++trial) {
                const std::size_t n = grid->active_count();
                ScalarField uu(n), cc(n), gg(n);
                VectorField bb = VectorField::zero(*grid);
                for (std::size_t k = 0; k < n; ++k) {
                    uu[k] = u(rng);
                    cc[k] = 3 * u(rng);
                    gg[k] = u(rng);
                    for (int a = 0; a < grid->dimension(); ++a) bb(k, a) = 2 * u(rng);
                }
                const SteadyProblem prob(grid, bb, cc, gg, u(rng));
                worst = std::max(worst, (apply_operator(prob, uu) - dense_residual_oracle(prob, uu)).sup_norm());
            }
            out.checks.push_back(at_most("dense_oracle[" + name + "]", worst, 1e-12,
                                         std::to_string(shape[0]) + "x" + std::to_string(shape[1]) + " lattice"));
            out.checks.push_back(at_most("lattice_size[" + name + "]", std::max(shape[0], shape[1]), 15));
        }
    }
    out.checks.push_back(at_most("runtime", since(t0), 120.0));
}

void evolution_decay(CriterionResult& out) {
    const auto t0 = Clock::now();
    {
        const GridPtr g = interval(1.0 / 64);
        const ScalarField c = ScalarField::constant(*g, -1.0);
        const SteadyProblem prob(g, VectorField::zero(*g), c, ScalarField(g->active_count()), 0.0);
        const ScalarField h0 = ScalarField::constant(*g, 2.0);
        const ScalarField v = ScalarField::constant(*g, 1.0);
        EvolutionConfig ec;
        ec.weight = &v;
        ec.weight_rate = 1.0;
        const EvolutionTrace tr = run_evolution(h0, prob, 5.0, ec);
        const double exact = 2.0 * std::exp(-5.0);
        double rel = 0.0;
        for (double x : tr.final_state.values()) rel = std::max(rel, std::abs(x - exact) / exact);
        out.checks.push_back(at_most("constant_case_relative_error", rel, 1e-3, "dt=" + fmt(tr.dt)));
        const DecayCheck dc = check_decay_bound(tr, v, 1.0, h0);
        out.checks.push_back(at_most("constant_case_weighted_slack", dc.slack, 1e-8));
    }
    {
        const GridPtr g = disk(1.0 / 16);
        const VectorField b = VectorField::zero(*g);
        const ScalarField c = make_sign_changing_c(example43(), *g);
        const EigenEstimate est = estimate_lambda_bar(g, b, c, SolverConfig{}, kBisectTol);
        const SteadyProblem prob(g, b, c, ScalarField(g->active_count()), 0.0);
        const ScalarField h0 = bump(*g);
        EvolutionConfig ec;
        ec.weight = &est.eigenfunction;
        ec.weight_rate = est.lambda_bar;
        const EvolutionTrace tr = run_evolution(h0, prob, 20.0 / est.lambda_bar, ec);
        out.checks.push_back(at_most("sign_changing_fitted_rate", tr.fitted_rate, -0.9 * est.lambda_bar,
                                     "lambda_bar=" + fmt(est.lambda_bar)));
        const DecayCheck dc = check_decay_bound(tr, est.eigenfunction, est.lambda_bar, h0);
        out.checks.push_back(at_most("sign_changing_decay_slack", dc.slack, 1e-2));
    }
    out.checks.push_back(at_most("runtime", since(t0), 300.0));
}

void lipschitz_stability(CriterionResult& out) {
    const auto t0 = Clock::now();
    const double pi = std::acos(-1.0);
    struct Case {
        std::string name;
        std::function<GridPtr(double)> grid;
        std::string var;
    };
    const std::vector<Case> cases{
        {"interval", [](double h) { return interval(h); }, "x"},
        {"disk", [](double h) { return disk(h); }, "r"},
    };
    for (const auto& cs : cases) {
        std::vector<double> lip;
        for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
            const GridPtr g = cs.grid(h);
            // u* = cos(πv) has zero normal derivative on the boundary; the
            // right-hand side is u*'' - u*
            const ScalarField rhs = from_expr(*g, "-(" + std::to_string(pi * pi) + " + 1)*cos(" + std::to_string(pi) +
                                                      "*" + cs.var + ")");
            const SteadyProblem prob(g, VectorField::zero(*g), ScalarField::constant(*g, -1.0), rhs, 0.0);
            lip.push_back(lipschitz_constant(solve_negative_c(prob, SolverConfig{}).u, *g));
        }
        const double ratio = std::max(lip[1] / lip[0], lip[2] / lip[1]);
        out.checks.push_back(at_most("lipschitz_ratio[" + cs.name + "]", ratio, 1.5,
                                     "L=" + fmt(lip[0]) + "," + fmt(lip[1]) + "," + fmt(lip[2])));
    }
    out.checks.push_back(at_most("runtime", since(t0), 120.0));
}

struct Entry {
    const char* title;
    void (*run)(CriterionResult&);
    const char* known_issue;
};

const std::map<int, Entry>& registry() {
    static const std::map<int, Entry> r{
        {1, {"constant-coefficient eigenvalue", constant_eigenvalue, nullptr}},
        {2, {"upper bound and shift law", bound_and_shift, nullptr}},
        {3, {"sign-changing c with positive eigenvalue", sign_changing_example, nullptr}},
        {4, {"maximum-principle threshold", maximum_principle_threshold, nullptr}},
        {5,
         {"operator correctness", operator_correctness,
          "at s=4 the ring directions (4,0) and (4,1) are 14 degrees apart, which caps the cone error near "
          "sin^2(7deg)/r, and at fixed s the O(h/rho) term does not shrink when (h, rho) halve"}},
        {6, {"solver properties", solver_properties, nullptr}},
        {7, {"evolution decay", evolution_decay, nullptr}},
        {8, {"Lipschitz stability", lipschitz_stability, nullptr}},
    };
    return r;
}

}  // namespace

bool CriterionResult::pass() const {
    if (!error.empty() || checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::vector<int> criterion_ids() {
    std::vector<int> ids;
    for (const auto& [id, e] : registry()) ids.push_back(id);
    return ids;
}

std::string criterion_title(int id) { return registry().at(id).title; }

CriterionResult run_criterion(int id) {
    const Entry& e = registry().at(id);
    CriterionResult r;
    r.id = id;
    r.title = e.title;
    if (e.known_issue) {
        r.expected_failure = true;
        r.known_issue = e.known_issue;
    }
    const auto t0 = Clock::now();
    try {
        e.run(r);
    } catch (const std::exception& ex) {
        r.error = ex.what();
    }
    r.seconds = since(t0);
    return r;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass() ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << " (" << fmt(r.seconds) << " s)";
    if (!r.error.empty()) os << ": error: " << r.error;
    std::string sep = ": ";
    for (const auto& c : r.checks) {
        if (c.pass) continue;
        os << sep << c.name << ' ' << fmt(c.value) << " vs " << fmt(c.limit);
        sep = "; ";
    }
    if (!r.pass() && r.expected_failure) os << " [known limitation: " << r.known_issue << ']';
    return os.str();
}

std::string report_json(const std::vector<CriterionResult>& results) {
    using nlohmann::json;
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json arr = json::array();
    for (const auto& r : results) {
        json checks = json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", num(c.value)}, {"limit", num(c.limit)},
                              {"slack", num(c.limit - c.value)}, {"detail", c.detail}});
        json j{{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"checks", checks}};
        if (!r.error.empty()) j["error"] = r.error;
        if (r.expected_failure) j["known_issue"] = r.known_issue;
        arr.push_back(j);
    }
    bool all = true;
    for (const auto& r : results) all &= r.pass();
    return json{{"pass", all}, {"criteria", arr}}.dump(2) + "\n";
}

}  // namespace infeig::app
