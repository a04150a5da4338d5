#include "infeig/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infeig/errors.hpp"

namespace infeig {

double cfl_limit(const SteadyProblem& problem) {
    const double rho = problem.grid().ring_radius();
    double zero_order = 0.0;
    for (double c : problem.c().values()) zero_order = std::max(zero_order, std::abs(c + problem.lambda()));
    return 1.0 / (2.0 * problem.grid().max_ring_scale() / (rho * rho) + problem.b_component_sum() / problem.grid().spacing() + zero_order);
}

namespace {

void step_into(const ScalarField& u, const SteadyProblem& p, double dt, ScalarField& out) {
    apply_operator(p, u.values(), out.values());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] + dt * out[k];
}

double weighted_max(const ScalarField& u, const ScalarField& v, double factor) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < u.size(); ++k) m = std::max(m, u[k] * factor / v[k]);
    return m;
}

void require_positive(const ScalarField& v) {
    const double m = v.min();
    if (!(m > 0.0)) throw NonpositiveWeight(m);
}

}  // namespace

ScalarField step_explicit(const ScalarField& state, const SteadyProblem& problem, double dt) {
    if (state.size() != problem.grid().active_count()) throw InvalidParams("state size does not match the grid");
    if (!(dt > 0.0)) throw InvalidParams("time step must be positive");
    const double limit = cfl_limit(problem);
    if (dt > limit * (1.0 + 1e-12)) throw CflViolation(dt, limit);
    ScalarField out(state.size());
    step_into(state, problem, dt, out);
    return out;
}

double fit_log_rate(const std::vector<double>& times, const std::vector<double>& sup_norm, double t_from) {
    double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < times.size() && i < sup_norm.size(); ++i) {
        if (times[i] < t_from || !(sup_norm[i] >= 1e-12)) continue;
        const double y = std::log(sup_norm[i]);
        n += 1;
        st += times[i];
        sy += y;
        stt += times[i] * times[i];
        sty += times[i] * y;
    }
    const double den = n * stt - st * st;
    if (n < 2 || !(den > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return (n * sty - st * sy) / den;
}

EvolutionTrace run_evolution(const ScalarField& h0, const SteadyProblem& problem, double T,
                             const EvolutionConfig& cfg) {
    const std::size_t n = problem.grid().active_count();
    if (h0.size() != n) throw InvalidParams("initial state size does not match the grid");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidParams("final time must be positive");
    if (cfg.weight) {
        if (cfg.weight->size() != n) throw InvalidParams("weight size does not match the grid");
        require_positive(*cfg.weight);
    }

    const double limit = cfl_limit(problem);
    double dt = cfg.dt > 0.0 ? cfg.dt : 0.9 * limit;
    if (dt > limit * (1.0 + 1e-12)) throw CflViolation(dt, limit);
    const auto steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    dt = T / static_cast<double>(steps);
    const double interval = cfg.output_interval > 0.0 ? cfg.output_interval : T / 200.0;
    const long every = std::max(1L, std::lround(interval / dt));

    EvolutionTrace tr;
    tr.dt = dt;
    tr.T = T;
    tr.cfl_margin = 1.0 - dt / limit;
    tr.steps = static_cast<int>(steps);

    auto record = [&](double t, const ScalarField& u) {
        tr.times.push_back(t);
        tr.sup_norm.push_back(u.sup_norm());
        if (cfg.weight) tr.weighted_ratio.push_back(weighted_max(u, *cfg.weight, std::exp(cfg.weight_rate * t)));
        if (cfg.keep_snapshots) tr.snapshots.push_back(u);
    };

    ScalarField u = h0;
    ScalarField next(n);
    record(0.0, u);
    for (long i = 1; i <= steps; ++i) {
        step_into(u, problem, dt, next);
        std::swap(u, next);
        if (i % every == 0 || i == steps) {
            if (!u.all_finite()) throw InvalidParams("evolution produced non-finite values");
            record(static_cast<double>(i) * dt, u);
        }
    }
    tr.fitted_rate = fit_log_rate(tr.times, tr.sup_norm, 0.5 * T);
    tr.final_state = std::move(u);
    return tr;
}

DecayCheck check_decay_bound(const EvolutionTrace& trace, const ScalarField& v, double lambda_bar,
                             const ScalarField& h0, double tolerance) {
    require_positive(v);
    if (h0.size() != v.size()) throw InvalidParams("weight and initial state sizes differ");
    if (trace.snapshots.size() != trace.times.size()) throw InvalidParams("trace was recorded without snapshots");

    DecayCheck out;
    out.rhs = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) out.rhs = std::max(out.rhs, std::max(h0[k], 0.0) / v[k]);
    out.lhs = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const ScalarField& u = trace.snapshots[i];
        if (u.size() != v.size()) throw InvalidParams("trace was recorded on a different grid");
        out.lhs = std::max(out.lhs, weighted_max(u, v, std::exp(lambda_bar * trace.times[i])));
    }
    out.slack = std::max(0.0, out.lhs - out.rhs);
    out.pass = out.slack <= tolerance;
    return out;
}

}  // namespace infeig
