#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "infeig/fields.hpp"
#include "infeig/operators.hpp"

namespace infeig {

enum class SweepOrder { Lexicographic, Reverse, Symmetric };

/// How the coercive nodal problem is solved.
///  - GaussSeidel: nonlinear Gauss-Seidel; the max/min ring neighbors are
///    re-selected at every nodal update.
///  - PolicyIteration: freeze the max/min selection, solve the resulting
///    M-matrix system with a sparse LU, re-select, repeat. When the joint
///    selection cycles, the max slots are frozen while Howard's method runs
///    on the min slots, then the max slots are improved. After that comes a
///    restart from a heavily shifted problem whose shift is halved back to
///    the target; Gauss-Seidel is the last resort.
enum class InnerMethod { GaussSeidel, PolicyIteration };

struct SolverConfig {
    double tol = 1e-9;              ///< sup-norm residual target
    int max_sweeps = 200000;        ///< Gauss-Seidel sweeps per coercive solve
    int max_policy_iterations = 400;  ///< linear solves per coercive solve
    double blowup_threshold = 0.0;  ///< <= 0 selects 1e6 * (1 + |g|∞)
    int max_outer = 20000;
    SweepOrder sweep_order = SweepOrder::Lexicographic;
    InnerMethod inner = InnerMethod::PolicyIteration;
    /// Extrapolate the monotone iteration along its increment, accepting a
    /// jump only when the landing point is verified to be a subsolution.
    bool accelerate = true;

    void validate() const;
    double blowup_for(double g_sup) const { return blowup_threshold > 0.0 ? blowup_threshold : 1e6 * (1.0 + g_sup); }
};

struct SteadySolution {
    ScalarField u;
    int iterations = 0;   ///< sweeps or policy iterations
    double residual = 0.0;
};

struct Converged {
    ScalarField u;
    int sweeps = 0;
    double residual = 0.0;
};

struct Diverged {
    int outer_step = 0;
    double sup_norm = 0.0;
    /// max_outer was exhausted without convergence or blowup.
    bool inconclusive = false;
    std::string reason;
};

struct IterationStats {
    int outer_steps = 0;
    int inner_iterations = 0;
    int accelerations = 0;
    /// min over recorded steps and nodes of u_{n+1} - u_n
    double min_increment = 0.0;
    std::vector<double> sup_history;
    std::vector<ScalarField> iterates;  ///< filled only when requested
};

struct IterationOutcome {
    std::variant<Converged, Diverged> result;
    IterationStats stats;

    bool converged() const noexcept { return std::holds_alternative<Converged>(result); }
    const Converged& solution() const { return std::get<Converged>(result); }
    const Diverged& divergence() const { return std::get<Diverged>(result); }
};

struct MonotoneOptions {
    /// Starting iterate (default zero). Must be a subsolution for the
    /// sequence to be nondecreasing.
    const ScalarField* start = nullptr;
    /// Known supersolution bounding the sequence; disables divergence jumps.
    const ScalarField* ceiling = nullptr;
    /// Skip the g <= 0 precondition (used for general right-hand sides).
    bool allow_general_g = false;
    bool record_iterates = false;
};

/// Solver for the coercive problem Δ∞u + b·Du + (z + shift)u = f with
/// z + shift <= -c0 < 0. Reuses its sparse factorization while the max/min
/// selection is unchanged, so repeated solves with new right-hand sides are
/// cheap.
class CoerciveSolver {
public:
    CoerciveSolver(const Grid& grid, const VectorField& b, std::span<const double> zero_order, double shift,
                   const SolverConfig& cfg);
    ~CoerciveSolver();
    CoerciveSolver(const CoerciveSolver&) = delete;
    CoerciveSolver& operator=(const CoerciveSolver&) = delete;

    /// Solves to residual <= target (absolute sup-norm), starting from init.
    SteadySolution solve(std::span<const double> rhs, const ScalarField& init, double target);

    double coercivity() const noexcept { return c0_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    double c0_;
};

/// Solves L_h u = g when max(c + λ) <= -c0 < 0.
/// Throws NotCoercive or NoConvergence.
SteadySolution solve_negative_c(const SteadyProblem& problem, const SolverConfig& cfg,
                                const ScalarField* initial_guess = nullptr);

/// The monotone iteration u_1 = 0, and for n >= 1
///   Δ∞u_{n+1} + b·Du_{n+1} + (c - |c|∞ - 1)u_{n+1} = g - (λ + |c|∞ + 1)u_n,
/// each step solved by the coercive solver. Converges when λ is below the
/// principal eigenvalue and blows up otherwise. Requires g <= 0.
IterationOutcome monotone_iteration(const SteadyProblem& problem, const SolverConfig& cfg,
                                    const MonotoneOptions& options = {});

IterationOutcome monotone_iteration(const GridPtr& grid, const VectorField& b, const ScalarField& c, double lambda,
                                    const ScalarField& g, const SolverConfig& cfg);

/// Solves L_h u = g for arbitrary g when λ < λ̄_h: the iteration is started
/// from the negative barrier solution for |g|∞ and stays below the positive
/// barrier for -|g|∞. Throws DivergenceError when the barrier problem blows up.
SteadySolution solve_general_rhs(const SteadyProblem& problem, const SolverConfig& cfg);

}  // namespace infeig
