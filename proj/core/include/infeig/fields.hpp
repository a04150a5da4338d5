#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <span>
#include <vector>

#include "infeig/geometry.hpp"

namespace infeig {

/// Nodal values over the active nodes of a grid.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(std::size_t n, double value = 0.0) : values_(n, value) {}
    explicit ScalarField(std::vector<double> values) : values_(std::move(values)) {}

    /// Samples f at every active node.
    static ScalarField sample(const Grid& grid, const std::function<double(const Point&)>& f);
    static ScalarField constant(const Grid& grid, double value) { return ScalarField(grid.active_count(), value); }

    std::size_t size() const noexcept { return values_.size(); }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& raw() noexcept { return values_; }
    const std::vector<double>& raw() const noexcept { return values_; }

    double sup_norm() const;
    double min() const;
    double max() const;
    bool all_finite() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double t);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double t, ScalarField a) { return a *= t; }
    friend ScalarField operator-(ScalarField a) { return a *= -1.0; }

    bool operator==(const ScalarField&) const = default;

private:
    std::vector<double> values_;
};

/// Nodal d-vectors over the active nodes, stored interleaved.
class VectorField {
public:
    VectorField() = default;
    VectorField(std::size_t n, int dim) : dim_(dim), values_(n * static_cast<std::size_t>(dim), 0.0) {}

    static VectorField zero(const Grid& grid) { return VectorField(grid.active_count(), grid.dimension()); }
    static VectorField sample(const Grid& grid, const std::function<Point(const Point&)>& f);

    int dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / static_cast<std::size_t>(dim_); }

    double operator()(std::size_t k, int axis) const { return values_[k * dim_ + axis]; }
    double& operator()(std::size_t k, int axis) { return values_[k * dim_ + axis]; }

    /// max over nodes of |b_axis|
    double component_sup(int axis) const;
    /// max over nodes of the Euclidean norm
    double sup_norm() const;
    bool all_finite() const;

private:
    int dim_ = 0;
    std::vector<double> values_;
};

}  // namespace infeig
