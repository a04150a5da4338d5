#include "infeig/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "infeig/errors.hpp"

namespace infeig {

std::vector<double> radial_inf_laplacian_reference(std::span<const double> phi, double dr) {
    if (!(dr > 0.0)) throw InvalidParams("sample spacing must be positive");
    std::vector<double> out;
    if (phi.size() < 3) return out;
    out.reserve(phi.size() - 2);
    for (std::size_t i = 1; i + 1 < phi.size(); ++i) out.push_back((phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (dr * dr));
    return out;
}

void Example43Params::validate() const {
    if (!(R > 0.0 && rho > 0.0 && eps > 0.0 && beta1 > 0.0 && k > 0.0))
        throw InvalidParams("R, rho, eps, beta1 and k must be positive");
    if (!(eps < R) || !(rho < R - eps)) throw InvalidParams("need 0 < rho < R - eps");
    if (!std::isfinite(beta2)) throw InvalidParams("beta2 must be finite");
    if (outer_value && !(*outer_value < 0.0)) throw InvalidParams("outer band value must be negative");
}

double example_43_bound(const Example43Params& p) {
    p.validate();
    const double e = std::exp(-p.k * p.rho);
    const double span = p.R - p.rho;
    return p.k * p.k * e / (p.k * span / 4.0 + 2.0 * p.k / (p.beta1 * span) + 1.0 - e);
}

ScalarField make_sign_changing_c(const Example43Params& p, const Grid& grid) {
    p.validate();
    const auto* disk = std::get_if<Disk>(&grid.domain().shape());
    if (!disk || std::abs(disk->radius - p.R) > 1e-12 * p.R) throw InvalidParams("grid domain must be a disk of radius R");
    const double outer = p.outer_value.value_or(-p.beta1);
    return ScalarField::sample(grid, [&](const Point& x) {
        const double r = std::hypot(x[0] - disk->center[0], x[1] - disk->center[1]);
        if (r <= p.rho) return p.beta2;
        if (r <= p.R - p.eps) return -p.beta1;
        return outer;
    });
}

double lipschitz_constant(const ScalarField& u, const Grid& grid) {
    if (u.size() != grid.active_count()) throw InvalidParams("field size does not match the grid");
    std::vector<std::array<int, 2>> steps{{1, 0}};
    if (grid.dimension() == 2) steps.push_back({0, 1});
    for (const auto& o : grid.ring_offsets()) steps.push_back(o);

    const auto shape = grid.lattice_shape();
    double best = 0.0;
    for (std::size_t a = 0; a < grid.active_count(); ++a) {
        const std::size_t node = grid.lattice_node(a);
        const int i = static_cast<int>(node / static_cast<std::size_t>(shape[1]));
        const int j = static_cast<int>(node % static_cast<std::size_t>(shape[1]));
        for (const auto& o : steps) {
            const std::int64_t other = grid.lattice_index(i + o[0], j + o[1]);
            if (other < 0) continue;
            const std::int64_t b = grid.active_index(static_cast<std::size_t>(other));
            if (b < 0) continue;
            const double dist = grid.spacing() * std::hypot(o[0], o[1]);
            best = std::max(best, std::abs(u[a] - u[static_cast<std::size_t>(b)]) / dist);
        }
    }
    return best;
}

namespace {

// Nearest boundary point for a point outside the domain.
Point project_outside(const Domain::Shape& shape, const Point& p) {
    struct Visitor {
        const Point& p;
        Point operator()(const Interval& s) const {
            return {std::abs(p[0] - s.a) <= std::abs(s.b - p[0]) ? s.a : s.b, 0.0};
        }
        Point radial(const Point& c, double radius, double scale) const {
            const double dx = p[0] - c[0], dy = p[1] - c[1];
            const double r = std::sqrt(dx * dx + dy * dy);
            if (r <= 1e-9 * scale) return {c[0] + radius, c[1]};
            return {c[0] + radius * dx / r, c[1] + radius * dy / r};
        }
        Point operator()(const Disk& s) const { return radial(s.center, s.radius, s.radius); }
        Point operator()(const Annulus& s) const {
            const double r = std::hypot(p[0] - s.center[0], p[1] - s.center[1]);
            return radial(s.center, r < 0.5 * (s.inner_radius + s.outer_radius) ? s.inner_radius : s.outer_radius,
                          s.inner_radius);
        }
        Point operator()(const Rectangle& s) const {
            return {std::min(std::max(p[0], s.lo[0]), s.hi[0]), std::min(std::max(p[1], s.lo[1]), s.hi[1])};
        }
    };
    return std::visit(Visitor{p}, shape);
}

class DenseEvaluator {
public:
    DenseEvaluator(const Grid& grid, const ScalarField& u) : grid_(grid), u_(u) {
        const auto shape = grid.lattice_shape();
        nx_ = shape[0];
        ny_ = shape[1];
        dim_ = grid.domain().dimension();
        h_ = grid.spacing();
        origin_ = grid.origin();
    }

    // active index at integer lattice coordinates, or -1
    std::int64_t active_at(int i, int j) const {
        if (i < 0 || i >= nx_ || j < 0 || j >= ny_) return -1;
        return grid_.active_index(static_cast<std::size_t>(i) * static_cast<std::size_t>(ny_) + static_cast<std::size_t>(j));
    }

    double value_at_lattice(int i, int j) const {
        const std::int64_t a = active_at(i, j);
        if (a >= 0) return u_[static_cast<std::size_t>(a)];
        const Point p{origin_[0] + i * h_, dim_ == 1 ? 0.0 : origin_[1] + j * h_};
        return ghost(p);
    }

    double ghost(const Point& p) const {
        const Point q = project_outside(grid_.domain().shape(), p);
        const Point m{2.0 * q[0] - p[0], dim_ == 1 ? 0.0 : 2.0 * q[1] - p[1]};
        const double gx = (m[0] - origin_[0]) / h_;
        const double gy = dim_ == 1 ? 0.0 : (m[1] - origin_[1]) / h_;
        const int i = static_cast<int>(std::floor(gx));
        const int j = static_cast<int>(std::floor(gy));
        const double tx = gx - i, ty = gy - j;

        double wsum = 0.0, vsum = 0.0;
        auto corner = [&](int ci, int cj, double w) {
            w = std::max(w, 0.0);
            if (w < 1e-13) return;
            const std::int64_t a = active_at(ci, cj);
            if (a < 0) return;
            wsum += w;
            vsum += w * u_[static_cast<std::size_t>(a)];
        };
        if (dim_ == 1) {
            corner(i, 0, 1.0 - tx);
            corner(i + 1, 0, tx);
        } else {
            corner(i, j, (1.0 - tx) * (1.0 - ty));
            corner(i + 1, j, tx * (1.0 - ty));
            corner(i, j + 1, (1.0 - tx) * ty);
            corner(i + 1, j + 1, tx * ty);
        }
        if (wsum >= 1e-12) return vsum / wsum;

        double best = std::numeric_limits<double>::infinity();
        double val = 0.0;
        for (std::size_t a = 0; a < grid_.active_count(); ++a) {
            const Point& x = grid_.active_coordinate(a);
            const double d = std::hypot(x[0] - m[0], x[1] - m[1]);
            if (d < best) {
                best = d;
                val = u_[a];
            }
        }
        return val;
    }

    int nx_ = 0, ny_ = 0, dim_ = 1;
    double h_ = 0.0;
    Point origin_{};

private:
    const Grid& grid_;
    const ScalarField& u_;
};

}  // namespace

ScalarField dense_residual_oracle(const SteadyProblem& problem, const ScalarField& u) {
    const Grid& grid = problem.grid();
    if (u.size() != grid.active_count()) throw InvalidParams("field size does not match the grid");
    DenseEvaluator ev(grid, u);
    const int s = grid.ring_multiple();
    const double rho = s * ev.h_;
    const int dim = ev.dim_;

    std::vector<std::array<int, 2>> ring;
    const int reach = s + 1;
    for (int a = -reach; a <= reach; ++a) {
        for (int b = (dim == 1 ? 0 : -reach); b <= (dim == 1 ? 0 : reach); ++b) {
            if (a == 0 && b == 0) continue;
            if (std::abs(std::sqrt(double(a * a + b * b)) - s) <= 0.5) ring.push_back({a, b});
        }
    }

    ScalarField out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const std::size_t node = grid.lattice_node(k);
        const int i = static_cast<int>(node / static_cast<std::size_t>(ev.ny_));
        const int j = static_cast<int>(node % static_cast<std::size_t>(ev.ny_));

        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& o : ring) {
            const double len = std::sqrt(double(o[0] * o[0] + o[1] * o[1]));
            const double v = (rho / (len * ev.h_)) * (ev.value_at_lattice(i + o[0], j + o[1]) - u[k]);
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
        double r = (hi + lo) / (rho * rho);

        for (int axis = 0; axis < dim; ++axis) {
            const double bi = problem.b()(k, axis);
            if (bi == 0.0) continue;
            const int dir = bi > 0.0 ? 1 : -1;
            const double nb = ev.value_at_lattice(i + (axis == 0 ? dir : 0), j + (axis == 1 ? dir : 0));
            r += bi * dir * (nb - u[k]) / ev.h_;
        }
        r += (problem.c()[k] + problem.lambda()) * u[k] - problem.g()[k];
        out[k] = r;
    }
    return out;
}

}  // namespace infeig
