#include "infeig/operators.hpp"

#include <cmath>

#include "infeig/errors.hpp"

namespace infeig {

SteadyProblem::SteadyProblem(GridPtr grid, VectorField b, ScalarField c, ScalarField g, double lambda)
    : grid_(std::move(grid)), b_(std::move(b)), c_(std::move(c)), g_(std::move(g)), lambda_(lambda) {
    if (!grid_) throw InvalidParams("SteadyProblem requires a grid");
    const std::size_t n = grid_->active_count();
    if (c_.size() != n || g_.size() != n || b_.size() != n)
        throw InvalidParams("coefficient fields are not conformal with the grid");
    if (b_.dimension() != grid_->dimension()) throw InvalidParams("drift dimension does not match the grid");
    if (!c_.all_finite() || !g_.all_finite() || !b_.all_finite() || !std::isfinite(lambda_))
        throw InvalidParams("coefficients must be finite");
    c_sup_ = c_.sup_norm();
    g_sup_ = g_.sup_norm();
    b_sup_ = b_.sup_norm();
    for (int a = 0; a < b_.dimension(); ++a) b_component_sum_ += b_.component_sup(a);
}

SteadyProblem SteadyProblem::homogeneous(GridPtr grid, ScalarField c, double lambda) {
    const std::size_t n = grid->active_count();
    VectorField b(n, grid->dimension());
    return SteadyProblem(std::move(grid), std::move(b), std::move(c), ScalarField(n), lambda);
}

SteadyProblem SteadyProblem::with_lambda(double lambda) const {
    SteadyProblem out = *this;
    out.lambda_ = lambda;
    return out;
}

SteadyProblem SteadyProblem::with_g(ScalarField g) const {
    return SteadyProblem(grid_, b_, c_, std::move(g), lambda_);
}

SteadyProblem SteadyProblem::with_c(ScalarField c) const {
    return SteadyProblem(grid_, b_, std::move(c), g_, lambda_);
}

double SteadyProblem::coefficient_scale() const {
    const double rho = grid_->ring_radius();
    return 2.0 * grid_->max_ring_scale() / (rho * rho) + b_component_sum_ / grid_->spacing() + c_sup_ + std::abs(lambda_);
}

Eigen::MatrixXd sigma(std::span<const double> p) {
    const auto n = static_cast<Eigen::Index>(p.size());
    Eigen::Map<const Eigen::VectorXd> v(p.data(), n);
    const double norm2 = v.squaredNorm();
    if (!(norm2 > 0.0)) throw ZeroVector();
    return v * v.transpose() / norm2;
}

RingExtrema ring_extrema(const Grid& grid, std::span<const double> u, std::size_t k) {
    const auto ring = grid.ring(k);
    const auto scale = grid.ring_scales();
    const double center = u[k];
    RingExtrema out{0.0, 0.0, 0, 0};
    double hi = scale[0] * (grid.closure_value(ring[0], u) - center);
    double lo = hi;
    for (std::uint32_t slot = 1; slot < ring.size(); ++slot) {
        const double v = scale[slot] * (grid.closure_value(ring[slot], u) - center);
        if (v > hi) {
            hi = v;
            out.arg_max = slot;
        }
        if (v < lo) {
            lo = v;
            out.arg_min = slot;
        }
    }
    out.max = center + hi;
    out.min = center + lo;
    return out;
}

double inf_laplacian(const Grid& grid, std::span<const double> u, std::size_t k) {
    const RingExtrema e = ring_extrema(grid, u, k);
    const double rho = grid.ring_radius();
    return ((e.max - u[k]) + (e.min - u[k])) / (rho * rho);
}

double drift_term(const Grid& grid, std::span<const double> u, const VectorField& b, std::size_t k) {
    const double inv_h = 1.0 / grid.spacing();
    double out = 0.0;
    for (int axis = 0; axis < grid.dimension(); ++axis) {
        const double bi = b(k, axis);
        if (bi > 0.0) {
            out += bi * (grid.closure_value(grid.axis_neighbor(k, axis, +1), u) - u[k]) * inv_h;
        } else if (bi < 0.0) {
            out += bi * (u[k] - grid.closure_value(grid.axis_neighbor(k, axis, -1), u)) * inv_h;
        }
    }
    return out;
}

void evaluate_operator(const Grid& grid, const VectorField& b, std::span<const double> zero_order, double shift,
                       std::span<const double> rhs, std::span<const double> u, std::span<double> out) {
    const std::size_t n = grid.active_count();
    if (u.size() != n || out.size() != n || zero_order.size() != n || (!rhs.empty() && rhs.size() != n))
        throw InvalidParams("field size does not match the grid");
    for (std::size_t k = 0; k < n; ++k) {
        double v = inf_laplacian(grid, u, k) + drift_term(grid, u, b, k) + (zero_order[k] + shift) * u[k];
        if (!rhs.empty()) v -= rhs[k];
        out[k] = v;
    }
}

void apply_operator(const SteadyProblem& problem, std::span<const double> u, std::span<double> out) {
    evaluate_operator(problem.grid(), problem.b(), problem.c().values(), problem.lambda(), problem.g().values(), u,
                      out);
}

ScalarField apply_operator(const SteadyProblem& problem, const ScalarField& u) {
    ScalarField out(u.size());
    apply_operator(problem, u.values(), out.values());
    return out;
}

ScalarField apply_homogeneous(const SteadyProblem& problem, const ScalarField& u) {
    ScalarField out(u.size());
    evaluate_operator(problem.grid(), problem.b(), problem.c().values(), problem.lambda(), {}, u.values(),
                      out.values());
    return out;
}

}  // namespace infeig
