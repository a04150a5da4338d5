#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace infeig {

/// Spatial point. One-dimensional domains use only the first component and
/// keep the second at zero.
using Point = std::array<double, 2>;

struct Interval {
    double a = 0.0;
    double b = 1.0;
};

struct Disk {
    Point center{0.0, 0.0};
    double radius = 1.0;
};

struct Annulus {
    Point center{0.0, 0.0};
    double inner_radius = 0.25;
    double outer_radius = 1.0;
};

/// Axis-aligned box. Its corners violate the C^2 boundary hypothesis; grids
/// built on it carry a flag in their metadata.
struct Rectangle {
    Point lo{0.0, 0.0};
    Point hi{1.0, 1.0};
};

/// A computational domain with closed-form distance, projection and normal.
class Domain {
public:
    using Shape = std::variant<Interval, Disk, Annulus, Rectangle>;

    explicit Domain(Shape shape);

    const Shape& shape() const noexcept { return shape_; }
    int dimension() const noexcept;
    std::string name() const;

    /// Closed-set membership.
    bool contains(const Point& x) const { return signed_distance(x) >= 0.0; }

    /// Positive inside, negative outside, zero on the boundary.
    double signed_distance(const Point& x) const;

    /// Closest point of the boundary to x.
    Point nearest_boundary_point(const Point& x) const;

    /// Outward unit normal at the boundary point nearest to x. Rectangle
    /// corners (x within `corner_band` of two sides) get the averaged normal.
    Point outward_normal(const Point& x, double corner_band = 0.0) const;

    /// Radius of the uniform exterior sphere touching the boundary near x;
    /// +infinity for flat or convex walls with no finite constraint.
    double exterior_sphere_radius(const Point& x) const;

    /// Reference point used for the radial coordinate r = |x - center|.
    Point center() const;

    std::array<Point, 2> bounding_box() const;
    double diameter() const;
    bool has_corners() const noexcept { return std::holds_alternative<Rectangle>(shape_); }

private:
    Shape shape_;
};

enum class NodeClass : std::uint8_t { Interior, Boundary, Exterior };

const char* to_string(NodeClass cls);

/// One term of a nodal closure: weight applied to an active-node value.
struct ClosureEntry {
    std::uint32_t active;
    double weight;
};

/// Half-open range into Grid's closure-entry table. A closure expresses the
/// value at a stencil position as a convex combination of active-node values;
/// a position that is itself an active node has one entry with weight 1.
struct ClosureRef {
    std::uint32_t begin;
    std::uint32_t end;
    bool ghost;
};

/// Uniform lattice discretization of a Domain.
///
/// Lattice nodes are anchored at the lower corner of the domain bounding box,
/// so halving h gives a nested lattice. Nodes within h/2 of the boundary are
/// Boundary nodes (they may lie slightly outside), nodes inside at distance
/// >= h/2 are Interior, everything else is Exterior. Interior and Boundary
/// nodes are "active" and carry field values; fields are indexed by active
/// index, geometry queries by lattice node index.
///
/// Every active node owns a ring stencil: lattice offsets whose length lies
/// within h/2 of rho_s = s*h, stored as (forward, backward) pairs. Offsets
/// whose length differs from rho_s are rescaled to it (see ring_scales). Stencil
/// positions that are not active nodes are closed by Neumann reflection:
/// mirror across the boundary along the normal, then bilinear interpolation
/// over the active corners of the cell containing the mirror point.
class Grid {
public:
    Grid(Domain domain, double h, int s);

    const Domain& domain() const noexcept { return domain_; }
    int dimension() const noexcept { return dim_; }
    double spacing() const noexcept { return h_; }
    int ring_multiple() const noexcept { return s_; }
    double ring_radius() const noexcept { return h_ * s_; }

    std::size_t node_count() const noexcept { return coords_.size(); }
    std::size_t active_count() const noexcept { return active_nodes_.size(); }
    std::array<int, 2> lattice_shape() const noexcept { return {nx_, ny_}; }
    const Point& origin() const noexcept { return origin_; }

    const Point& coordinate(std::size_t node) const { return coords_.at(node); }
    NodeClass node_class(std::size_t node) const { return classes_.at(node); }
    std::size_t count(NodeClass cls) const;

    /// Active index of a lattice node, or -1 for Exterior nodes.
    std::int64_t active_index(std::size_t node) const { return active_index_.at(node); }
    std::size_t lattice_node(std::size_t active) const { return active_nodes_.at(active); }
    const Point& active_coordinate(std::size_t active) const { return coords_[active_nodes_[active]]; }
    NodeClass active_class(std::size_t active) const { return classes_[active_nodes_[active]]; }

    /// Outward normal at a Boundary node; throws NotBoundaryNode otherwise.
    const Point& normal(std::size_t node) const;

    /// Integer ring offsets, ordered as (o0, -o0, o1, -o1, ...).
    std::span<const std::array<int, 2>> ring_offsets() const noexcept { return ring_offsets_; }
    std::size_t direction_pairs() const noexcept { return ring_offsets_.size() / 2; }

    /// ρ_s/|o| per ring offset. A ring sample u(x+o) enters the scheme
    /// rescaled to the exact radius along its ray: u(x) + (ρ_s/|o|)(u(x+o) - u(x)).
    std::span<const double> ring_scales() const noexcept { return ring_scales_; }
    double max_ring_scale() const noexcept { return max_ring_scale_; }

    /// Ring closures of an active node, ordered like ring_offsets().
    std::span<const ClosureRef> ring(std::size_t active) const {
        return {ring_.data() + active * ring_offsets_.size(), ring_offsets_.size()};
    }

    /// Closure of the axis neighbor x + dir*h*e_axis (dir = +1 or -1).
    const ClosureRef& axis_neighbor(std::size_t active, int axis, int dir) const {
        return axis_[(active * 2 + static_cast<std::size_t>(axis)) * 2 + (dir > 0 ? 0 : 1)];
    }

    std::span<const ClosureEntry> entries(const ClosureRef& ref) const {
        return {entries_.data() + ref.begin, ref.end - ref.begin};
    }

    double closure_value(const ClosureRef& ref, std::span<const double> u) const {
        double v = 0.0;
        for (std::uint32_t e = ref.begin; e < ref.end; ++e) v += entries_[e].weight * u[entries_[e].active];
        return v;
    }

    /// Lattice node index of integer lattice coordinates, or -1 if outside the lattice.
    std::int64_t lattice_index(int i, int j) const;

    /// Mirror image of an exterior point across the boundary.
    Point reflect(const Point& p) const;

private:
    ClosureRef make_closure(const Point& p);
    void classify();
    void build_offsets();
    void build_scales();
    void build_stencils();

    Domain domain_;
    double h_;
    int s_;
    int dim_;
    int nx_ = 0;
    int ny_ = 1;
    Point origin_{0.0, 0.0};
    std::vector<Point> coords_;
    std::vector<NodeClass> classes_;
    std::vector<Point> normals_;
    std::vector<std::int64_t> active_index_;
    std::vector<std::size_t> active_nodes_;
    std::vector<std::array<int, 2>> ring_offsets_;
    std::vector<double> ring_scales_;
    double max_ring_scale_ = 1.0;
    std::vector<ClosureRef> ring_;
    std::vector<ClosureRef> axis_;
    std::vector<ClosureEntry> entries_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a grid. Throws InvalidParams for h <= 0 or s < 1 and
/// DomainTooCoarse when the lattice is too coarse for the stencil.
Grid build_grid(const Domain& domain, double h, int s);
GridPtr make_grid(const Domain& domain, double h, int s);

class ScalarField;

/// Distance to the boundary, clamped at zero, for every active node.
ScalarField distance_field(const Grid& grid);

/// Outward unit normal at a Boundary lattice node.
Point outward_normal(const Grid& grid, std::size_t node);

}  // namespace infeig
