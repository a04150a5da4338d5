#include "infeig/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "infeig/errors.hpp"
#include "infeig/fields.hpp"

namespace infeig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(const Point& p) { return std::hypot(p[0], p[1]); }

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }

// points within round-off of the center all map to the same direction
Point radial_unit(const Point& x, const Point& c, double scale) {
    const Point d = sub(x, c);
    const double r = norm(d);
    if (r <= 1e-9 * scale) return {1.0, 0.0};
    return {d[0] / r, d[1] / r};
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

const char* to_string(NodeClass cls) {
    switch (cls) {
        case NodeClass::Interior: return "interior";
        case NodeClass::Boundary: return "boundary";
        case NodeClass::Exterior: return "exterior";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Domain

Domain::Domain(Shape shape) : shape_(std::move(shape)) {
    std::visit(overloaded{
                   [](const Interval& s) {
                       if (!(s.a < s.b)) throw InvalidParams("Interval requires a < b");
                   },
                   [](const Disk& s) {
                       if (!(s.radius > 0.0)) throw InvalidParams("Disk requires R > 0");
                   },
                   [](const Annulus& s) {
                       if (!(0.0 < s.inner_radius && s.inner_radius < s.outer_radius))
                           throw InvalidParams("Annulus requires 0 < rho_in < R");
                   },
                   [](const Rectangle& s) {
                       if (!(s.lo[0] < s.hi[0] && s.lo[1] < s.hi[1]))
                           throw InvalidParams("Rectangle requires lo < hi componentwise");
                   },
               },
               shape_);
}

int Domain::dimension() const noexcept { return std::holds_alternative<Interval>(shape_) ? 1 : 2; }

std::string Domain::name() const {
    return std::visit(overloaded{
                          [](const Interval&) { return std::string("interval"); },
                          [](const Disk&) { return std::string("disk"); },
                          [](const Annulus&) { return std::string("annulus"); },
                          [](const Rectangle&) { return std::string("rectangle"); },
                      },
                      shape_);
}

double Domain::signed_distance(const Point& x) const {
    return std::visit(overloaded{
                          [&](const Interval& s) { return std::min(x[0] - s.a, s.b - x[0]); },
                          [&](const Disk& s) { return s.radius - norm(sub(x, s.center)); },
                          [&](const Annulus& s) {
                              const double r = norm(sub(x, s.center));
                              return std::min(r - s.inner_radius, s.outer_radius - r);
                          },
                          [&](const Rectangle& s) {
                              const double qx = std::max(s.lo[0] - x[0], x[0] - s.hi[0]);
                              const double qy = std::max(s.lo[1] - x[1], x[1] - s.hi[1]);
                              const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
                              return -(outside + std::min(std::max(qx, qy), 0.0));
                          },
                      },
                      shape_);
}

Point Domain::nearest_boundary_point(const Point& x) const {
    return std::visit(
        overloaded{
            [&](const Interval& s) -> Point {
                return {(x[0] - s.a <= s.b - x[0]) ? s.a : s.b, 0.0};
            },
            [&](const Disk& s) -> Point {
                const Point e = radial_unit(x, s.center, s.radius);
                return {s.center[0] + s.radius * e[0], s.center[1] + s.radius * e[1]};
            },
            [&](const Annulus& s) -> Point {
                const double r = norm(sub(x, s.center));
                const Point e = radial_unit(x, s.center, s.inner_radius);
                const double target = (r < 0.5 * (s.inner_radius + s.outer_radius)) ? s.inner_radius : s.outer_radius;
                return {s.center[0] + target * e[0], s.center[1] + target * e[1]};
            },
            [&](const Rectangle& s) -> Point {
                Point q{std::clamp(x[0], s.lo[0], s.hi[0]), std::clamp(x[1], s.lo[1], s.hi[1])};
                const bool inside = q[0] == x[0] && q[1] == x[1];
                if (!inside) return q;
                const double d[4] = {x[0] - s.lo[0], s.hi[0] - x[0], x[1] - s.lo[1], s.hi[1] - x[1]};
                const auto side = std::min_element(d, d + 4) - d;
                switch (side) {
                    case 0: return {s.lo[0], x[1]};
                    case 1: return {s.hi[0], x[1]};
                    case 2: return {x[0], s.lo[1]};
                    default: return {x[0], s.hi[1]};
                }
            },
        },
        shape_);
}

Point Domain::outward_normal(const Point& x, double corner_band) const {
    return std::visit(
        overloaded{
            [&](const Interval& s) -> Point {
                return {(x[0] - s.a <= s.b - x[0]) ? -1.0 : 1.0, 0.0};
            },
            [&](const Disk& s) -> Point { return radial_unit(x, s.center, s.radius); },
            [&](const Annulus& s) -> Point {
                const double r = norm(sub(x, s.center));
                const Point e = radial_unit(x, s.center, s.inner_radius);
                if (r < 0.5 * (s.inner_radius + s.outer_radius)) return {-e[0], -e[1]};
                return e;
            },
            [&](const Rectangle& s) -> Point {
                const double dlo_x = std::abs(x[0] - s.lo[0]);
                const double dhi_x = std::abs(s.hi[0] - x[0]);
                const double dlo_y = std::abs(x[1] - s.lo[1]);
                const double dhi_y = std::abs(s.hi[1] - x[1]);
                const double nx = dlo_x <= dhi_x ? -1.0 : 1.0;
                const double ny = dlo_y <= dhi_y ? -1.0 : 1.0;
                const double dx = std::min(dlo_x, dhi_x);
                const double dy = std::min(dlo_y, dhi_y);
                // a point outside the box in both coordinates sits past a corner
                const bool past_x = x[0] < s.lo[0] || x[0] > s.hi[0];
                const bool past_y = x[1] < s.lo[1] || x[1] > s.hi[1];
                if ((dx < corner_band && dy < corner_band) || (past_x && past_y)) {
                    const double inv = 1.0 / std::sqrt(2.0);
                    return {nx * inv, ny * inv};
                }
                if (past_x) return {nx, 0.0};
                if (past_y) return {0.0, ny};
                return dx <= dy ? Point{nx, 0.0} : Point{0.0, ny};
            },
        },
        shape_);
}

double Domain::exterior_sphere_radius(const Point& x) const {
    return std::visit(overloaded{
                          [](const Interval&) { return kInf; },
                          [](const Disk& s) { return s.radius; },
                          [&](const Annulus& s) {
                              const double r = norm(sub(x, s.center));
                              return r < 0.5 * (s.inner_radius + s.outer_radius) ? s.inner_radius : s.outer_radius;
                          },
                          [](const Rectangle&) { return kInf; },
                      },
                      shape_);
}

Point Domain::center() const {
    return std::visit(overloaded{
                          [](const Interval& s) -> Point { return {0.5 * (s.a + s.b), 0.0}; },
                          [](const Disk& s) -> Point { return s.center; },
                          [](const Annulus& s) -> Point { return s.center; },
                          [](const Rectangle& s) -> Point {
                              return {0.5 * (s.lo[0] + s.hi[0]), 0.5 * (s.lo[1] + s.hi[1])};
                          },
                      },
                      shape_);
}

std::array<Point, 2> Domain::bounding_box() const {
    return std::visit(
        overloaded{
            [](const Interval& s) -> std::array<Point, 2> { return {Point{s.a, 0.0}, Point{s.b, 0.0}}; },
            [](const Disk& s) -> std::array<Point, 2> {
                return {Point{s.center[0] - s.radius, s.center[1] - s.radius},
                        Point{s.center[0] + s.radius, s.center[1] + s.radius}};
            },
            [](const Annulus& s) -> std::array<Point, 2> {
                return {Point{s.center[0] - s.outer_radius, s.center[1] - s.outer_radius},
                        Point{s.center[0] + s.outer_radius, s.center[1] + s.outer_radius}};
            },
            [](const Rectangle& s) -> std::array<Point, 2> { return {s.lo, s.hi}; },
        },
        shape_);
}

double Domain::diameter() const {
    const auto box = bounding_box();
    if (std::holds_alternative<Interval>(shape_)) return box[1][0] - box[0][0];
    if (std::holds_alternative<Rectangle>(shape_)) return norm(sub(box[1], box[0]));
    return box[1][0] - box[0][0];
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(Domain domain, double h, int s) : domain_(std::move(domain)), h_(h), s_(s), dim_(domain_.dimension()) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidParams("grid spacing h must be positive");
    if (s < 1) throw InvalidParams("ring multiple s must be >= 1");
    if (domain_.diameter() < 4.0 * s * h)
        throw DomainTooCoarse("domain diameter is smaller than 4*s*h");
    classify();
    const std::size_t min_interior = dim_ == 1 ? 3 : 8;
    if (count(NodeClass::Interior) < min_interior)
        throw DomainTooCoarse("only " + std::to_string(count(NodeClass::Interior)) + " interior nodes");
    build_offsets();
    build_scales();
    build_stencils();
}

void Grid::classify() {
    const auto box = domain_.bounding_box();
    origin_ = box[0];
    auto lattice_extent = [&](double lo, double hi) {
        return static_cast<int>(std::floor((hi - lo) / h_ + 0.5 - 1e-9)) + 1;
    };
    nx_ = lattice_extent(box[0][0], box[1][0]);
    ny_ = dim_ == 1 ? 1 : lattice_extent(box[0][1], box[1][1]);

    const std::size_t n = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    coords_.resize(n);
    classes_.resize(n);
    normals_.assign(n, Point{0.0, 0.0});
    active_index_.assign(n, -1);
    active_nodes_.clear();

    for (int i = 0; i < nx_; ++i) {
        for (int j = 0; j < ny_; ++j) {
            const auto node = static_cast<std::size_t>(lattice_index(i, j));
            const Point x{origin_[0] + i * h_, dim_ == 1 ? 0.0 : origin_[1] + j * h_};
            coords_[node] = x;
            const double sd = domain_.signed_distance(x);
            NodeClass cls = NodeClass::Exterior;
            if (std::abs(sd) < 0.5 * h_) {
                cls = NodeClass::Boundary;
                normals_[node] = domain_.outward_normal(x, 0.5 * h_);
            } else if (sd >= 0.5 * h_) {
                cls = NodeClass::Interior;
            }
            classes_[node] = cls;
            if (cls != NodeClass::Exterior) {
                active_index_[node] = static_cast<std::int64_t>(active_nodes_.size());
                active_nodes_.push_back(node);
            }
        }
    }
}

void Grid::build_offsets() {
    ring_offsets_.clear();
    if (dim_ == 1) {
        ring_offsets_.push_back({s_, 0});
        ring_offsets_.push_back({-s_, 0});
        return;
    }
    std::vector<std::array<int, 2>> reps;
    for (int i = -s_ - 1; i <= s_ + 1; ++i) {
        for (int j = -s_ - 1; j <= s_ + 1; ++j) {
            const bool canonical = i > 0 || (i == 0 && j > 0);
            if (!canonical) continue;
            const double len = std::hypot(static_cast<double>(i), static_cast<double>(j));
            if (std::abs(len - s_) <= 0.5) reps.push_back({i, j});
        }
    }
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
        return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });
    for (const auto& o : reps) {
        ring_offsets_.push_back(o);
        ring_offsets_.push_back({-o[0], -o[1]});
    }
}

void Grid::build_scales() {
    ring_scales_.clear();
    for (const auto& o : ring_offsets_)
        ring_scales_.push_back(static_cast<double>(s_) / std::hypot(static_cast<double>(o[0]), static_cast<double>(o[1])));
    max_ring_scale_ = *std::max_element(ring_scales_.begin(), ring_scales_.end());
}

std::int64_t Grid::lattice_index(int i, int j) const {
    if (i < 0 || i >= nx_ || j < 0 || j >= ny_) return -1;
    return static_cast<std::int64_t>(i) * ny_ + j;
}

Point Grid::reflect(const Point& p) const {
    const Point q = domain_.nearest_boundary_point(p);
    return {2.0 * q[0] - p[0], dim_ == 1 ? 0.0 : 2.0 * q[1] - p[1]};
}

ClosureRef Grid::make_closure(const Point& p) {
    const auto begin = static_cast<std::uint32_t>(entries_.size());
    const double fi = (p[0] - origin_[0]) / h_;
    const double fj = dim_ == 1 ? 0.0 : (p[1] - origin_[1]) / h_;
    const int ri = static_cast<int>(std::lround(fi));
    const int rj = static_cast<int>(std::lround(fj));
    if (std::abs(fi - ri) < 1e-9 && std::abs(fj - rj) < 1e-9) {
        const auto node = lattice_index(ri, rj);
        if (node >= 0 && active_index_[static_cast<std::size_t>(node)] >= 0) {
            entries_.push_back({static_cast<std::uint32_t>(active_index_[static_cast<std::size_t>(node)]), 1.0});
            return {begin, begin + 1, false};
        }
    }

    const Point m = reflect(p);
    const double gi = (m[0] - origin_[0]) / h_;
    const double gj = dim_ == 1 ? 0.0 : (m[1] - origin_[1]) / h_;
    const int i0 = static_cast<int>(std::floor(gi));
    const int j0 = static_cast<int>(std::floor(gj));
    const double tx = gi - i0;
    const double ty = gj - j0;

    struct Corner {
        int i, j;
        double w;
    };
    std::array<Corner, 4> corners{};
    int ncorners = 0;
    if (dim_ == 1) {
        corners[ncorners++] = {i0, 0, 1.0 - tx};
        corners[ncorners++] = {i0 + 1, 0, tx};
    } else {
        corners[ncorners++] = {i0, j0, (1.0 - tx) * (1.0 - ty)};
        corners[ncorners++] = {i0 + 1, j0, tx * (1.0 - ty)};
        corners[ncorners++] = {i0, j0 + 1, (1.0 - tx) * ty};
        corners[ncorners++] = {i0 + 1, j0 + 1, tx * ty};
    }

    double total = 0.0;
    for (int c = 0; c < ncorners; ++c) {
        auto& k = corners[static_cast<std::size_t>(c)];
        const auto node = lattice_index(k.i, k.j);
        k.w = std::max(k.w, 0.0);
        if (node < 0 || active_index_[static_cast<std::size_t>(node)] < 0 || k.w < 1e-13) {
            k.w = 0.0;
            continue;
        }
        total += k.w;
    }

    if (total < 1e-12) {
        // mirror point has no active corner: fall back to the nearest active node
        std::size_t best = 0;
        double best_d = kInf;
        for (std::size_t a = 0; a < active_nodes_.size(); ++a) {
            const double d = norm(sub(coords_[active_nodes_[a]], m));
            if (d < best_d) {
                best_d = d;
                best = a;
            }
        }
        entries_.push_back({static_cast<std::uint32_t>(best), 1.0});
        return {begin, begin + 1, true};
    }

    for (int c = 0; c < ncorners; ++c) {
        const auto& k = corners[static_cast<std::size_t>(c)];
        if (k.w == 0.0) continue;
        const auto active = static_cast<std::uint32_t>(active_index_[static_cast<std::size_t>(lattice_index(k.i, k.j))]);
        entries_.push_back({active, k.w / total});
    }
    return {begin, static_cast<std::uint32_t>(entries_.size()), true};
}

void Grid::build_stencils() {
    const std::size_t na = active_nodes_.size();
    ring_.clear();
    axis_.clear();
    entries_.clear();
    ring_.reserve(na * ring_offsets_.size());
    axis_.reserve(na * 4);
    for (std::size_t a = 0; a < na; ++a) {
        const Point& x = coords_[active_nodes_[a]];
        for (const auto& o : ring_offsets_) ring_.push_back(make_closure({x[0] + o[0] * h_, x[1] + o[1] * h_}));
        for (int axis = 0; axis < 2; ++axis) {
            for (int dir : {1, -1}) {
                if (axis >= dim_) {
                    const auto begin = static_cast<std::uint32_t>(entries_.size());
                    entries_.push_back({static_cast<std::uint32_t>(a), 1.0});
                    axis_.push_back({begin, begin + 1, false});
                    continue;
                }
                Point p = x;
                p[static_cast<std::size_t>(axis)] += dir * h_;
                axis_.push_back(make_closure(p));
            }
        }
    }
}

std::size_t Grid::count(NodeClass cls) const {
    return static_cast<std::size_t>(std::count(classes_.begin(), classes_.end(), cls));
}

const Point& Grid::normal(std::size_t node) const {
    if (node >= classes_.size() || classes_[node] != NodeClass::Boundary) throw NotBoundaryNode(node);
    return normals_[node];
}

Grid build_grid(const Domain& domain, double h, int s) { return Grid(domain, h, s); }

GridPtr make_grid(const Domain& domain, double h, int s) { return std::make_shared<const Grid>(domain, h, s); }

ScalarField distance_field(const Grid& grid) {
    ScalarField d(grid.active_count());
    for (std::size_t a = 0; a < d.size(); ++a)
        d[a] = std::max(grid.domain().signed_distance(grid.active_coordinate(a)), 0.0);
    return d;
}

Point outward_normal(const Grid& grid, std::size_t node) { return grid.normal(node); }

}  // namespace infeig
