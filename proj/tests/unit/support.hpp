#pragma once

#include <random>

#include "infeig/fields.hpp"
#include "infeig/geometry.hpp"

namespace test {

inline infeig::GridPtr interval(double h, int s = 1) {
    return infeig::make_grid(infeig::Domain(infeig::Interval{0.0, 1.0}), h, s);
}

inline infeig::GridPtr disk(double h, int s = 1, double radius = 1.0) {
    return infeig::make_grid(infeig::Domain(infeig::Disk{{0.0, 0.0}, radius}), h, s);
}

inline infeig::GridPtr annulus(double h, int s = 1) {
    return infeig::make_grid(infeig::Domain(infeig::Annulus{{0.0, 0.0}, 0.25, 1.0}), h, s);
}

inline infeig::GridPtr rectangle(double h, int s = 1) {
    return infeig::make_grid(infeig::Domain(infeig::Rectangle{{0.0, 0.0}, {1.0, 1.0}}), h, s);
}

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    infeig::ScalarField field(const infeig::Grid& g, double lo, double hi) {
        infeig::ScalarField f(g.active_count());
        for (double& v : f.raw()) v = uniform(lo, hi);
        return f;
    }

    infeig::VectorField vector_field(const infeig::Grid& g, double amp) {
        infeig::VectorField b = infeig::VectorField::zero(g);
        for (std::size_t k = 0; k < g.active_count(); ++k)
            for (int a = 0; a < g.dimension(); ++a) b(k, a) = uniform(-amp, amp);
        return b;
    }
};

inline double max_abs_diff(const infeig::ScalarField& a, const infeig::ScalarField& b) {
    return (a - b).sup_norm();
}

}  // namespace test
