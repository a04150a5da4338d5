#pragma once

#include <optional>

#include "infeig/fields.hpp"
#include "infeig/geometry.hpp"
#include "infeig/operators.hpp"

namespace infeig {

/// Centered second differences of uniformly spaced samples φ(r_i):
/// out[i] = (φ[i+1] - 2φ[i] + φ[i-1]) / dr² for the n-2 interior samples.
std::vector<double> radial_inf_laplacian_reference(std::span<const double> phi, double dr);

/// Parameters of the sign-changing zero-order coefficient on Disk(0, R):
/// c = +β₂ for |x| <= ρ, -β₁ for ρ < |x| <= R - ε, and a negative value
/// (default -β₁) in the outer band.
struct Example43Params {
    double R = 1.0;
    double rho = 0.2;
    double eps = 0.05;
    double beta1 = 1.0;
    double beta2 = 0.0;
    double k = 5.0;
    std::optional<double> outer_value;

    void validate() const;
};

/// k²e^{-kρ} / (k(R-ρ)/4 + 2k/(β₁(R-ρ)) + 1 - e^{-kρ})
double example_43_bound(const Example43Params& p);

/// Piecewise-constant radial c on a grid over a disk of radius R.
ScalarField make_sign_changing_c(const Example43Params& p, const Grid& grid);

/// max |u(x) - u(y)| / |x - y| over active lattice pairs (x, y) joined by an
/// axis step or a ring offset.
double lipschitz_constant(const ScalarField& u, const Grid& grid);

/// Brute-force residual Δ∞u + b·Du + (c+λ)u - g that shares no stencil code
/// with apply_operator: it re-enumerates ring offsets and rebuilds every
/// Neumann ghost value from the domain geometry on the fly.
ScalarField dense_residual_oracle(const SteadyProblem& problem, const ScalarField& u);

}  // namespace infeig
