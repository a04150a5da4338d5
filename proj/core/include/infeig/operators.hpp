#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "infeig/fields.hpp"
#include "infeig/geometry.hpp"

namespace infeig {

/// Coefficients of  Δ∞u + b·Du + (c + λ)u = g  on a grid, with homogeneous
/// Neumann data carried by the grid's ghost closures. Sup-norms are cached.
class SteadyProblem {
public:
    SteadyProblem(GridPtr grid, VectorField b, ScalarField c, ScalarField g, double lambda);

    /// b ≡ 0, g ≡ 0 convenience.
    static SteadyProblem homogeneous(GridPtr grid, ScalarField c, double lambda);

    const Grid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const VectorField& b() const noexcept { return b_; }
    const ScalarField& c() const noexcept { return c_; }
    const ScalarField& g() const noexcept { return g_; }
    double lambda() const noexcept { return lambda_; }

    double c_sup() const noexcept { return c_sup_; }
    double b_sup() const noexcept { return b_sup_; }
    double g_sup() const noexcept { return g_sup_; }
    /// Σ_i max_x |b_i(x)|
    double b_component_sum() const noexcept { return b_component_sum_; }

    SteadyProblem with_lambda(double lambda) const;
    SteadyProblem with_g(ScalarField g) const;
    SteadyProblem with_c(ScalarField c) const;

    /// Scale of the largest operator coefficient at a node:
    /// 2σ_max/ρ² + Σ|b_i|/h + |c|∞ + |λ|. Used to size round-off allowances.
    double coefficient_scale() const;

private:
    GridPtr grid_;
    VectorField b_;
    ScalarField c_;
    ScalarField g_;
    double lambda_;
    double c_sup_ = 0.0;
    double b_sup_ = 0.0;
    double g_sup_ = 0.0;
    double b_component_sum_ = 0.0;
};

/// Rank-one projector p⊗p/|p|². Throws ZeroVector when p = 0.
Eigen::MatrixXd sigma(std::span<const double> p);

/// Largest and smallest rescaled ring value u(x) + (ρ_s/|o|)(u(x+o) - u(x))
/// around an active node, with the ring slot that attains each (first slot
/// on ties).
struct RingExtrema {
    double max;
    double min;
    std::uint32_t arg_max;
    std::uint32_t arg_min;
};

RingExtrema ring_extrema(const Grid& grid, std::span<const double> u, std::size_t k);

/// (max_ring ũ + min_ring ũ - 2u(x)) / ρ_s², ρ_s = s·h, with ũ the rescaled ring values.
double inf_laplacian(const Grid& grid, std::span<const double> u, std::size_t k);

/// Componentwise first-order upwind b·Du: forward difference where b_i > 0,
/// backward where b_i < 0, so every neighbor enters with weight |b_i|/h ≥ 0.
double drift_term(const Grid& grid, std::span<const double> u, const VectorField& b, std::size_t k);

/// out[k] = Δ∞u + b·Du + (zero_order[k] + shift)·u[k] - rhs[k]  for every active k.
/// An empty rhs is read as zero.
void evaluate_operator(const Grid& grid, const VectorField& b, std::span<const double> zero_order, double shift,
                       std::span<const double> rhs, std::span<const double> u, std::span<double> out);

/// Residual L_h u = Δ∞u + b·Du + (c+λ)u - g at every active node.
ScalarField apply_operator(const SteadyProblem& problem, const ScalarField& u);
void apply_operator(const SteadyProblem& problem, std::span<const double> u, std::span<double> out);

/// Same operator with g replaced by zero.
ScalarField apply_homogeneous(const SteadyProblem& problem, const ScalarField& u);

}  // namespace infeig
