#pragma once

#include <vector>

#include "infeig/fields.hpp"
#include "infeig/operators.hpp"

namespace infeig {

/// Largest forward-Euler step keeping the scheme monotone:
/// 1 / (2σ_max/ρ² + Σ|b_i|∞/h + |c + λ|∞), σ_max the largest ring rescaling.
double cfl_limit(const SteadyProblem& problem);

/// One forward-Euler step  u + dt·(Δ∞u + b·Du + (c+λ)u - g).
/// Throws CflViolation when dt exceeds cfl_limit.
ScalarField step_explicit(const ScalarField& state, const SteadyProblem& problem, double dt);

struct EvolutionConfig {
    double dt = 0.0;               ///< <= 0: 0.9 x the CFL limit
    double output_interval = 0.0;  ///< <= 0: T/200
    /// Optional positive weight v and rate λ for the ratio h·e^{λt}/v.
    const ScalarField* weight = nullptr;
    double weight_rate = 0.0;
    bool keep_snapshots = true;
};

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> sup_norm;
    std::vector<double> weighted_ratio;  ///< empty without a weight
    std::vector<ScalarField> snapshots;  ///< state at every recorded time
    double fitted_rate = 0.0;
    double dt = 0.0;
    double T = 0.0;
    double cfl_margin = 0.0;  ///< 1 - dt / cfl_limit
    int steps = 0;
    ScalarField final_state;
};

/// Evolves h_t = Δ∞h + b·Dh + (c+λ)h - g from h0 up to time T. The step is
/// adjusted down so that T is hit exactly. t = 0 is always recorded.
EvolutionTrace run_evolution(const ScalarField& h0, const SteadyProblem& problem, double T,
                             const EvolutionConfig& cfg = {});

/// Least-squares slope of log sup|h| over records with t >= t_from and
/// sup|h| >= 1e-12. NaN with fewer than two usable records.
double fit_log_rate(const std::vector<double>& times, const std::vector<double>& sup_norm, double t_from);

struct DecayCheck {
    bool pass = false;
    double slack = 0.0;  ///< max(0, lhs - rhs)
    double lhs = 0.0;    ///< max over records and nodes of h e^{λt}/v
    double rhs = 0.0;    ///< max over nodes of h0⁺/v
};

/// Weighted decay estimate  h(t,x) e^{λt} / v(x) <= sup h0⁺/v  over every
/// recorded snapshot. Throws NonpositiveWeight when min v <= 0.
DecayCheck check_decay_bound(const EvolutionTrace& trace, const ScalarField& v, double lambda_bar,
                             const ScalarField& h0, double tolerance = 1e-2);

}  // namespace infeig
