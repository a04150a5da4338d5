#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "infeig/errors.hpp"
#include "infeig/operators.hpp"
#include "infeig/oracles.hpp"
#include "support.hpp"

using namespace infeig;

namespace {

double local_part(const Grid& g, const ScalarField& u, const VectorField& b, std::size_t k) {
    return inf_laplacian(g, u.values(), k) + drift_term(g, u.values(), b, k);
}

bool ghost_free(const Grid& g, std::size_t k) {
    for (const auto& ref : g.ring(k))
        if (ref.ghost) return false;
    for (int a = 0; a < g.dimension(); ++a)
        for (int d : {1, -1})
            if (g.axis_neighbor(k, a, d).ghost) return false;
    return true;
}

}  // namespace

TEST_CASE("sigma of an axis vector") {
    const std::vector<double> p{1.0, 0.0};
    const Eigen::MatrixXd s = sigma(p);
    CHECK(s(0, 0) == 1.0);
    CHECK(s(0, 1) == 0.0);
    CHECK(s(1, 0) == 0.0);
    CHECK(s(1, 1) == 0.0);
}

TEST_CASE("sigma is homogeneous of order zero") {
    const std::vector<double> p{1.0, 2.0}, q{-3.0, -6.0};
    CHECK((sigma(p) - sigma(q)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("sigma perturbation bound") {
    const std::vector<double> p{1.0, 0.0}, pp{1.0, 0.4};
    const Eigen::MatrixXd d = sigma(pp) - sigma(p);
    const double tr = (d * d).trace();
    // σ(1,0.4) = [[1, .4], [.4, .16]]/1.16
    const double a = 1.0 / 1.16 - 1.0, b = 0.4 / 1.16, c = 0.16 / 1.16;
    CHECK(tr == doctest::Approx(a * a + 2 * b * b + c * c).epsilon(1e-12));
    CHECK(tr <= 8 * 0.16);
}

TEST_CASE("sigma rejects the zero vector") {
    const std::vector<double> z{0.0, 0.0};
    CHECK_THROWS_AS(sigma(z), ZeroVector);
}

TEST_CASE("sigma properties on random vectors") {
    test::Gen gen(3);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> p(static_cast<std::size_t>(gen.integer(1, 3)));
        for (double& v : p) v = gen.uniform(-10, 10);
        const Eigen::MatrixXd s = sigma(p);
        CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((s * s - s).cwiseAbs().maxCoeff() <= 1e-12);
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s).eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            CHECK(std::min(std::abs(ev[i]), std::abs(ev[i] - 1.0)) <= 1e-12);
    }
}

TEST_CASE("quadratic in 1D is exact") {
    for (int s : {1, 2, 3}) {
        const GridPtr g = test::interval(1.0 / 32, s);
        const ScalarField u = ScalarField::sample(*g, [](const Point& p) { return p[0] * p[0]; });
        for (std::size_t k = 0; k < g->active_count(); ++k)
            if (ghost_free(*g, k)) CHECK(inf_laplacian(*g, u.values(), k) == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("constants are annihilated") {
    for (const GridPtr& g : {test::disk(1.0 / 8, 2), test::annulus(1.0 / 8), test::interval(1.0 / 8)}) {
        const ScalarField u = ScalarField::constant(*g, 7.0);
        const VectorField b = test::Gen(1).vector_field(*g, 3.0);
        for (std::size_t k = 0; k < g->active_count(); ++k) {
            CHECK(std::abs(inf_laplacian(*g, u.values(), k)) <= 1e-12);
            CHECK(std::abs(drift_term(*g, u.values(), b, k)) <= 1e-12);
        }
    }
}

namespace {

double cone_error(double h, int s) {
    const GridPtr g = test::disk(h, s);
    const Point x0{0.1234, -0.0567};
    const ScalarField u =
        ScalarField::sample(*g, [&](const Point& p) { return std::hypot(p[0] - x0[0], p[1] - x0[1]); });
    double worst = 0.0;
    for (std::size_t k = 0; k < g->active_count(); ++k) {
        const Point& p = g->active_coordinate(k);
        if (std::hypot(p[0] - x0[0], p[1] - x0[1]) < 0.5 || !ghost_free(*g, k)) continue;
        worst = std::max(worst, std::abs(inf_laplacian(*g, u.values(), k)));
    }
    return worst;
}

}  // namespace

TEST_CASE("cone away from its vertex is nearly infinity-harmonic") {
    // limited by the angular spacing of the ring, so it improves with s rather than with h
    const double s4 = cone_error(1.0 / 64, 4);
    CHECK(s4 < 0.05);
    CHECK(cone_error(1.0 / 128, 8) < s4);
    CHECK(cone_error(1.0 / 32, 2) > s4);
}

TEST_CASE("drift is exact on affine functions") {
    const GridPtr g1 = test::interval(1.0 / 16);
    const ScalarField u1 = ScalarField::sample(*g1, [](const Point& p) { return p[0]; });
    const VectorField one = VectorField::sample(*g1, [](const Point&) { return Point{1.0, 0.0}; });
    for (std::size_t k = 1; k + 1 < g1->active_count(); ++k)
        CHECK(drift_term(*g1, u1.values(), one, k) == doctest::Approx(1.0));

    const GridPtr g2 = test::disk(1.0 / 16);
    const ScalarField u2 = ScalarField::sample(*g2, [](const Point& p) { return 3 * p[0] + 4 * p[1]; });
    const VectorField b = VectorField::sample(*g2, [](const Point&) { return Point{1.0, -2.0}; });
    const VectorField zero = VectorField::zero(*g2);
    for (std::size_t k = 0; k < g2->active_count(); ++k) {
        CHECK(drift_term(*g2, u2.values(), zero, k) == 0.0);
        if (ghost_free(*g2, k)) CHECK(drift_term(*g2, u2.values(), b, k) == doctest::Approx(-5.0));
    }
}

TEST_CASE("residual of constants and of zero") {
    const GridPtr g = test::disk(1.0 / 8, 2);
    test::Gen gen(5);
    const VectorField b = gen.vector_field(*g, 2.0);
    const ScalarField c = gen.field(*g, -2, 2), rhs = gen.field(*g, -1, 1);
    const SteadyProblem p(g, b, c, rhs, 0.0);
    const ScalarField r = apply_operator(p, ScalarField::constant(*g, 3.0));
    for (std::size_t k = 0; k < g->active_count(); ++k) CHECK(r[k] == doctest::Approx(3.0 * c[k] - rhs[k]));
    const ScalarField r0 = apply_operator(p, ScalarField(g->active_count()));
    for (std::size_t k = 0; k < g->active_count(); ++k) CHECK(r0[k] == -rhs[k]);

    const SteadyProblem q(g, VectorField::zero(*g), ScalarField::constant(*g, -1), ScalarField::constant(*g, -1), 0.0);
    CHECK(apply_operator(q, ScalarField::constant(*g, 1.0)).sup_norm() <= 1e-14);
}

TEST_CASE("dense oracle agrees on a five node interval") {
    const GridPtr g = make_grid(Domain(Interval{0.0, 1.0}), 0.25, 1);
    test::Gen gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const SteadyProblem p(g, gen.vector_field(*g, 3), gen.field(*g, -2, 2), gen.field(*g, -1, 1),
                              gen.uniform(-1, 1));
        const ScalarField u = gen.field(*g, -1, 1);
        CHECK((apply_operator(p, u) - dense_residual_oracle(p, u)).sup_norm() <= 1e-12);
    }
}

TEST_CASE("dense oracle agrees on small 2D grids") {
    test::Gen gen(13);
    for (const GridPtr& g : {test::disk(1.0 / 7, 1), test::disk(1.0 / 7, 2), test::annulus(1.0 / 7, 2),
                             test::rectangle(1.0 / 14, 2), test::rectangle(1.0 / 14, 3)}) {
        REQUIRE(g->lattice_shape()[0] <= 15);
        for (int trial = 0; trial < 10; ++trial) {
            const SteadyProblem p(g, gen.vector_field(*g, 3), gen.field(*g, -2, 2), gen.field(*g, -1, 1),
                                  gen.uniform(-1, 1));
            const ScalarField u = gen.field(*g, -1, 1);
            CHECK((apply_operator(p, u) - dense_residual_oracle(p, u)).sup_norm() <= 1e-12);
        }
    }
}

TEST_CASE("monotone in neighbor values, antitone in the center value") {
    test::Gen gen(17);
    for (const GridPtr& g : {test::disk(1.0 / 8, 2), test::annulus(1.0 / 8, 1), test::interval(1.0 / 16, 2)}) {
        const VectorField b = gen.vector_field(*g, 2);
        for (int trial = 0; trial < 200; ++trial) {
            const ScalarField u = gen.field(*g, -1, 1);
            const std::size_t k = static_cast<std::size_t>(gen.integer(0, static_cast<int>(g->active_count()) - 1));
            const std::size_t j = static_cast<std::size_t>(gen.integer(0, static_cast<int>(g->active_count()) - 1));
            const double base = local_part(*g, u, b, k);
            ScalarField up = u;
            up[j] += gen.uniform(0.0, 0.5);
            const double moved = local_part(*g, up, b, k);
            if (j == k) {
                // raising u(x) alone, with every neighbor fixed
                CHECK(moved <= base + 1e-12);
            } else {
                CHECK(moved >= base - 1e-12);
            }
        }
    }
}

TEST_CASE("positive homogeneity and odd symmetry") {
    test::Gen gen(19);
    const GridPtr g = test::annulus(1.0 / 8, 2);
    const SteadyProblem p(g, gen.vector_field(*g, 2), gen.field(*g, -2, 2), ScalarField(g->active_count()), 0.3);
    const SteadyProblem pure(g, VectorField::zero(*g), ScalarField(g->active_count()), ScalarField(g->active_count()),
                             0.0);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField u = gen.field(*g, -1, 1);
        const double t = gen.uniform(0.01, 100.0);
        const ScalarField a = apply_operator(p, t * u);
        const ScalarField b = t * apply_operator(p, u);
        CHECK((a - b).sup_norm() <= 1e-12 * std::max(1.0, b.sup_norm()));
        CHECK(apply_operator(pure, -u) == -apply_operator(pure, u));
    }
}

TEST_CASE("value at a strict maximum lies between directional second differences") {
    const GridPtr g = test::disk(1.0 / 16, 1);
    test::Gen gen(23);
    const double rho2 = g->ring_radius() * g->ring_radius();
    for (int trial = 0; trial < 50; ++trial) {
        const double a = gen.uniform(0.5, 4), b = gen.uniform(0.5, 4), c = gen.uniform(-1, 1);
        const ScalarField u = ScalarField::sample(*g, [&](const Point& p) {
            return -(a * p[0] * p[0] + b * p[1] * p[1] + c * p[0] * p[1]) - 0.1 * p[0] * p[0] * p[0];
        });
        std::size_t k = 0;
        for (std::size_t i = 0; i < g->active_count(); ++i)
            if (g->active_coordinate(i)[0] == 0.0 && g->active_coordinate(i)[1] == 0.0) k = i;
        const auto ring = g->ring(k);
        const auto scale = g->ring_scales();
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t j = 0; j < ring.size(); j += 2) {
            const double dd = (scale[j] * (g->closure_value(ring[j], u.values()) - u[k]) +
                               scale[j + 1] * (g->closure_value(ring[j + 1], u.values()) - u[k])) /
                              rho2;
            lo = std::min(lo, dd);
            hi = std::max(hi, dd);
        }
        const double v = inf_laplacian(*g, u.values(), k);
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("problem caches sup norms and validates sizes") {
    const GridPtr g = test::interval(1.0 / 8);
    const ScalarField c = ScalarField::sample(*g, [](const Point& p) { return -3.0 * p[0]; });
    const SteadyProblem p(g, VectorField::zero(*g), c, ScalarField::constant(*g, -2.0), 0.5);
    CHECK(p.c_sup() == doctest::Approx(3.0));
    CHECK(p.g_sup() == 2.0);
    CHECK_THROWS_AS(SteadyProblem(g, VectorField::zero(*g), ScalarField(3), ScalarField(g->active_count()), 0.0),
                    InvalidParams);
}
