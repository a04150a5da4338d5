#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infeig/fields.hpp"
#include "infeig/steady_solver.hpp"

namespace infeig {

struct BisectionProbe {
    double lambda = 0.0;
    bool converged = false;
    /// max_outer ran out; counted as diverged
    bool inconclusive = false;
    int outer_steps = 0;
};

struct EigenEstimate {
    double lambda_lo = 0.0;  ///< monotone iteration converged here
    double lambda_hi = 0.0;  ///< and diverged here
    double lambda_bar = 0.0; ///< midpoint
    ScalarField eigenfunction;
    /// sup |Δ∞φ + b·Dφ + (c + λ̄)φ|
    double eigen_residual = 0.0;
    int bisection_steps = 0;
    std::vector<BisectionProbe> history;
    std::vector<std::string> flags;
};

/// Principal eigenvalue by bisection on [-|c|∞ - 1, |c|∞ + 1]: a probe at λ
/// runs the monotone iteration with g ≡ -1 and moves the lower end when it
/// converges, the upper end otherwise. The eigenfunction is the normalized
/// solution at the final lower end. Throws BracketFailure when the initial
/// endpoints do not behave as expected.
EigenEstimate estimate_lambda_bar(const GridPtr& grid, const VectorField& b, const ScalarField& c,
                                  const SolverConfig& cfg, double bisect_tol);

/// u / |u|∞ for the converged solution u at λ_probe with g ≡ -1. Throws
/// DivergenceError when the iteration does not converge.
ScalarField extract_eigenfunction(const GridPtr& grid, const VectorField& b, const ScalarField& c, double lambda_probe,
                                  const SolverConfig& cfg);

/// sup-norm of Δ∞φ + b·Dφ + (c + λ)φ.
double eigen_residual(const GridPtr& grid, const VectorField& b, const ScalarField& c, double lambda,
                      const ScalarField& phi);

enum class MpVerdict { Holds, Fails };

const char* to_string(MpVerdict v);

struct SeedResult {
    MpVerdict verdict = MpVerdict::Holds;
    double time = 0.0;       ///< when the verdict was reached
    double final_max = 0.0;  ///< max u at that time
    long steps = 0;
};

struct MaxPrincipleOptions {
    double decay_threshold = 1e-6;
    double blowup = 0.0;  ///< <= 0: the solver's blowup threshold for g = 0
    double t_max = 1000.0;
    double dt = 0.0;      ///< <= 0: 0.9 x the CFL limit
    /// λ̄_h for the report; computed with bisect_tol when absent
    std::optional<double> lambda_bar;
    bool compute_lambda_bar = true;
    double bisect_tol = 1e-4;
};

struct MaxPrincipleReport {
    double lambda = 0.0;
    std::optional<double> lambda_bar;
    std::vector<SeedResult> seeds;

    bool holds() const;
};

/// Runs u_t = Δ∞u + b·Du + (c+λ)u from every seed until max u falls to the
/// decay threshold (holds) or rises past the blowup level (fails). Throws
/// Inconclusive when a seed reaches t_max with neither.
MaxPrincipleReport check_maximum_principle(const GridPtr& grid, const VectorField& b, const ScalarField& c,
                                           double lambda, const std::vector<ScalarField>& seeds,
                                           const SolverConfig& cfg, const MaxPrincipleOptions& options = {});

}  // namespace infeig
