#include "infeig/fields.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "infeig/errors.hpp"

namespace infeig {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::DomainTooCoarse: return "DomainTooCoarse";
        case ErrorCode::NotBoundaryNode: return "NotBoundaryNode";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::EvalError: return "EvalError";
        case ErrorCode::NotCoercive: return "NotCoercive";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::Diverged: return "Diverged";
        case ErrorCode::BracketFailure: return "BracketFailure";
        case ErrorCode::Inconclusive: return "Inconclusive";
        case ErrorCode::CflViolation: return "CflViolation";
        case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(const Point&)>& f) {
    ScalarField out(grid.active_count());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(grid.active_coordinate(k));
    return out;
}

double ScalarField::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::min() const {
    if (values_.empty()) return std::numeric_limits<double>::quiet_NaN();
    return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
    if (values_.empty()) return std::numeric_limits<double>::quiet_NaN();
    return *std::max_element(values_.begin(), values_.end());
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    if (other.size() != size()) throw InvalidParams("field size mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    if (other.size() != size()) throw InvalidParams("field size mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double t) {
    for (double& v : values_) v *= t;
    return *this;
}

VectorField VectorField::sample(const Grid& grid, const std::function<Point(const Point&)>& f) {
    VectorField out = zero(grid);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const Point v = f(grid.active_coordinate(k));
        for (int a = 0; a < out.dim_; ++a) out(k, a) = v[static_cast<std::size_t>(a)];
    }
    return out;
}

double VectorField::component_sup(int axis) const {
    double m = 0.0;
    for (std::size_t k = 0; k < size(); ++k) m = std::max(m, std::abs((*this)(k, axis)));
    return m;
}

double VectorField::sup_norm() const {
    double m = 0.0;
    for (std::size_t k = 0; k < size(); ++k) {
        double s = 0.0;
        for (int a = 0; a < dim_; ++a) s += (*this)(k, a) * (*this)(k, a);
        m = std::max(m, std::sqrt(s));
    }
    return m;
}

bool VectorField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace infeig
