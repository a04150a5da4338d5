#include "infeig/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "infeig/errors.hpp"
#include "infeig/evolution.hpp"

namespace infeig {

namespace {

struct Probe {
    BisectionProbe record;
    ScalarField u;
};

Probe run_probe(const SteadyProblem& base, double lambda, const SolverConfig& cfg) {
    IterationOutcome out = monotone_iteration(base.with_lambda(lambda), cfg);
    Probe p;
    p.record.lambda = lambda;
    p.record.outer_steps = out.stats.outer_steps;
    if (out.converged()) {
        p.record.converged = true;
        p.u = out.solution().u;
    } else {
        p.record.inconclusive = out.divergence().inconclusive;
    }
    return p;
}

ScalarField normalized(const ScalarField& u) {
    const double m = u.sup_norm();
    if (!(m > 0.0)) throw InvalidParams("cannot normalize a zero field");
    ScalarField phi = u;
    phi *= 1.0 / m;
    return phi;
}

}  // namespace

EigenEstimate estimate_lambda_bar(const GridPtr& grid, const VectorField& b, const ScalarField& c,
                                  const SolverConfig& cfg, double bisect_tol) {
    if (!(bisect_tol > 0.0)) throw InvalidParams("bisect_tol must be positive");
    cfg.validate();
    const SteadyProblem base(grid, b, c, ScalarField(grid->active_count(), -1.0), 0.0);

    EigenEstimate est;
    double lo = -base.c_sup() - 1.0;
    double hi = base.c_sup() + 1.0;

    Probe lower = run_probe(base, lo, cfg);
    est.history.push_back(lower.record);
    if (!lower.record.converged) throw BracketFailure("monotone iteration diverged at the lower bracket end");
    Probe upper = run_probe(base, hi, cfg);
    est.history.push_back(upper.record);
    if (upper.record.converged) throw BracketFailure("monotone iteration converged at the upper bracket end");
    if (upper.record.inconclusive) est.flags.push_back("inconclusive_upper_endpoint");

    ScalarField u_lo = std::move(lower.u);
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        Probe p = run_probe(base, mid, cfg);
        est.history.push_back(p.record);
        ++est.bisection_steps;
        if (p.record.converged) {
            lo = mid;
            u_lo = std::move(p.u);
        } else {
            hi = mid;
            if (p.record.inconclusive) est.flags.push_back("inconclusive_probe");
        }
    }
    std::sort(est.flags.begin(), est.flags.end());
    est.flags.erase(std::unique(est.flags.begin(), est.flags.end()), est.flags.end());

    est.lambda_lo = lo;
    est.lambda_hi = hi;
    est.lambda_bar = 0.5 * (lo + hi);
    est.eigenfunction = normalized(u_lo);
    if (!(est.eigenfunction.min() > 0.0)) est.flags.push_back("eigenfunction_not_positive");
    est.eigen_residual = eigen_residual(grid, b, c, est.lambda_bar, est.eigenfunction);
    return est;
}

ScalarField extract_eigenfunction(const GridPtr& grid, const VectorField& b, const ScalarField& c, double lambda_probe,
                                  const SolverConfig& cfg) {
    const SteadyProblem p(grid, b, c, ScalarField(grid->active_count(), -1.0), lambda_probe);
    IterationOutcome out = monotone_iteration(p, cfg);
    if (!out.converged()) throw DivergenceError(out.divergence().outer_step, out.divergence().sup_norm);
    return normalized(out.solution().u);
}

double eigen_residual(const GridPtr& grid, const VectorField& b, const ScalarField& c, double lambda,
                      const ScalarField& phi) {
    const SteadyProblem p(grid, b, c, ScalarField(grid->active_count()), lambda);
    return apply_operator(p, phi).sup_norm();
}

const char* to_string(MpVerdict v) {
    return v == MpVerdict::Holds ? "holds" : "fails";
}

bool MaxPrincipleReport::holds() const {
    return std::all_of(seeds.begin(), seeds.end(), [](const SeedResult& s) { return s.verdict == MpVerdict::Holds; });
}

MaxPrincipleReport check_maximum_principle(const GridPtr& grid, const VectorField& b, const ScalarField& c,
                                           double lambda, const std::vector<ScalarField>& seeds,
                                           const SolverConfig& cfg, const MaxPrincipleOptions& options) {
    if (seeds.empty()) throw InvalidParams("at least one seed is required");
    if (!(options.t_max > 0.0) || !(options.decay_threshold > 0.0)) throw InvalidParams("invalid mpcheck budget");
    const std::size_t n = grid->active_count();
    const SteadyProblem problem(grid, b, c, ScalarField(n), lambda);
    const double blowup = options.blowup > 0.0 ? options.blowup : cfg.blowup_for(0.0);
    const double limit = cfl_limit(problem);
    const double dt = options.dt > 0.0 ? options.dt : 0.9 * limit;
    if (dt > limit * (1.0 + 1e-12)) throw CflViolation(dt, limit);

    MaxPrincipleReport report;
    report.lambda = lambda;
    if (options.lambda_bar) {
        report.lambda_bar = options.lambda_bar;
    } else if (options.compute_lambda_bar) {
        report.lambda_bar = estimate_lambda_bar(grid, b, c, cfg, options.bisect_tol).lambda_bar;
    }

    for (const ScalarField& seed : seeds) {
        if (seed.size() != n) throw InvalidParams("seed size does not match the grid");
        if (!(seed.max() > 0.0)) throw InvalidParams("seeds must have a positive part");
        ScalarField u = seed;
        ScalarField next(n);
        SeedResult r;
        double t = 0.0;
        bool decided = false;
        while (t < options.t_max) {
            apply_operator(problem, u.values(), next.values());
            for (std::size_t k = 0; k < n; ++k) next[k] = u[k] + dt * next[k];
            std::swap(u, next);
            t += dt;
            ++r.steps;
            const double m = u.max();
            if (m <= options.decay_threshold) {
                r.verdict = MpVerdict::Holds;
                decided = true;
            } else if (m >= blowup || !std::isfinite(m)) {
                r.verdict = MpVerdict::Fails;
                decided = true;
            }
            if (decided) {
                r.time = t;
                r.final_max = m;
                break;
            }
        }
        if (!decided) throw Inconclusive(options.t_max);
        report.seeds.push_back(r);
    }
    return report;
}

}  // namespace infeig
