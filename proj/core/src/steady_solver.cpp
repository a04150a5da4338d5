#include "infeig/steady_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "infeig/errors.hpp"

namespace infeig {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using SparseLU = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

double sup_of(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// (arg_max, arg_min) ring slot per node, interleaved.
using Policy = std::vector<std::uint32_t>;

// Extremal ring slots of u. With a previous policy, a previous slot is kept
// while its value is within `tie` of the extremum, so that round-off cannot
// make the selection flip between equivalent neighbors.
Policy select_policy(const Grid& grid, std::span<const double> u, const Policy* prev, double tie) {
    const std::size_t n = grid.active_count();
    Policy pol(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        const RingExtrema e = ring_extrema(grid, u, k);
        std::uint32_t hi = e.arg_max, lo = e.arg_min;
        // flat ring: pair a direction with its antipode
        if (hi == lo) lo = hi ^ 1u;
        if (prev) {
            const auto ring = grid.ring(k);
            const auto scale = grid.ring_scales();
            const std::uint32_t ph = (*prev)[2 * k], pl = (*prev)[2 * k + 1];
            if (u[k] + scale[ph] * (grid.closure_value(ring[ph], u) - u[k]) >= e.max - tie) hi = ph;
            if (u[k] + scale[pl] * (grid.closure_value(ring[pl], u) - u[k]) <= e.min + tie) lo = pl;
        }
        pol[2 * k] = hi;
        pol[2 * k + 1] = lo;
    }
    return pol;
}

// Re-selects one side of the policy (0: max, 1: min) for u, keeping the
// current slot within `tie` of the extremum. True when anything changed.
bool reselect(const Grid& grid, std::span<const double> u, Policy& pol, int side, double tie) {
    const std::size_t n = grid.active_count();
    const auto scale = grid.ring_scales();
    bool changed = false;
    for (std::size_t k = 0; k < n; ++k) {
        const RingExtrema e = ring_extrema(grid, u, k);
        const auto ring = grid.ring(k);
        std::uint32_t& slot = pol[2 * k + static_cast<std::size_t>(side)];
        const double cur = u[k] + scale[slot] * (grid.closure_value(ring[slot], u) - u[k]);
        const bool keep = side == 0 ? cur >= e.max - tie : cur <= e.min + tie;
        if (keep) continue;
        slot = side == 0 ? e.arg_max : e.arg_min;
        changed = true;
    }
    return changed;
}

// Matrix of the operator with frozen max/min selection:
// (σ_hi(u_hi - u) + σ_lo(u_lo - u))/ρ² + upwind b·Du + (z + shift)u.
SparseMatrix assemble(const Grid& grid, const VectorField& b, std::span<const double> zero_order, double shift,
                      const Policy& pol) {
    const std::size_t n = grid.active_count();
    const double rho = grid.ring_radius();
    const double inv_r2 = 1.0 / (rho * rho);
    const double inv_h = 1.0 / grid.spacing();
    const auto scale = grid.ring_scales();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n * 16);
    auto add = [&](int row, const ClosureRef& ref, double coef) {
        for (const auto& e : grid.entries(ref)) trip.emplace_back(row, static_cast<int>(e.active), coef * e.weight);
    };
    for (std::size_t k = 0; k < n; ++k) {
        const int row = static_cast<int>(k);
        const auto ring = grid.ring(k);
        const double sh = scale[pol[2 * k]], sl = scale[pol[2 * k + 1]];
        add(row, ring[pol[2 * k]], sh * inv_r2);
        add(row, ring[pol[2 * k + 1]], sl * inv_r2);
        double diag = -(sh + sl) * inv_r2 + zero_order[k] + shift;
        for (int axis = 0; axis < grid.dimension(); ++axis) {
            const double bi = b(k, axis);
            if (bi > 0.0) {
                add(row, grid.axis_neighbor(k, axis, +1), bi * inv_h);
                diag -= bi * inv_h;
            } else if (bi < 0.0) {
                add(row, grid.axis_neighbor(k, axis, -1), -bi * inv_h);
                diag += bi * inv_h;
            }
        }
        trip.emplace_back(row, row, diag);
    }
    SparseMatrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();
    return a;
}

double operator_scale(const Grid& grid, const VectorField& b, std::span<const double> zero_order, double shift) {
    const double rho = grid.ring_radius();
    double bsum = 0.0;
    for (int a = 0; a < b.dimension(); ++a) bsum += b.component_sup(a);
    double z = 0.0;
    for (double v : zero_order) z = std::max(z, std::abs(v + shift));
    return 2.0 * grid.max_ring_scale() / (rho * rho) + bsum / grid.spacing() + z;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw InvalidParams("solver tol must be positive");
    if (max_sweeps < 1 || max_outer < 1 || max_policy_iterations < 0)
        throw InvalidParams("solver iteration limits must be >= 1");
    if (blowup_threshold > 0.0 && !(blowup_threshold > 1.0))
        throw InvalidParams("blowup threshold must exceed 1");
}

// ---------------------------------------------------------------------------
// CoerciveSolver

struct CoerciveSolver::Impl {
    const Grid& grid;
    VectorField b;
    std::vector<double> zero_order;
    double shift;
    SolverConfig cfg;
    double scale;

    Policy cached_policy;
    SparseMatrix matrix;
    SparseLU lu;
    bool factorized = false;

    Impl(const Grid& g, const VectorField& bb, std::span<const double> z, double s, const SolverConfig& c)
        : grid(g), b(bb), zero_order(z.begin(), z.end()), shift(s), cfg(c),
          scale(operator_scale(g, bb, z, s)) {}

    double residual(std::span<const double> rhs, const ScalarField& u, std::vector<double>& buf) const {
        buf.resize(u.size());
        evaluate_operator(grid, b, zero_order, shift, rhs, u.values(), buf);
        return sup_of(buf);
    }

    // residual level below which further iteration only stirs round-off
    double floor(std::span<const double> rhs, const ScalarField& u) const {
        return 1e-13 * (scale * u.sup_norm() + sup_of(rhs));
    }

    double tie(const ScalarField& u) const { return 1e-13 * u.sup_norm(); }

    bool factorize(const Policy& pol) {
        matrix = assemble(grid, b, zero_order, shift, pol);
        lu.compute(matrix);
        factorized = lu.info() == Eigen::Success;
        if (factorized) cached_policy = pol;
        return factorized;
    }

    // LU solve plus one step of iterative refinement
    bool linear_solve(std::span<const double> rhs, ScalarField& u) {
        const auto n = static_cast<Eigen::Index>(rhs.size());
        Eigen::Map<const Eigen::VectorXd> f(rhs.data(), n);
        Eigen::VectorXd x = lu.solve(f);
        if (lu.info() != Eigen::Success || !x.allFinite()) return false;
        const Eigen::VectorXd r = f - matrix * x;
        const Eigen::VectorXd dx = lu.solve(r);
        if (lu.info() == Eigen::Success && dx.allFinite()) x += dx;
        std::copy(x.data(), x.data() + n, u.raw().begin());
        return true;
    }

    void sweep(ScalarField& u, std::span<const double> rhs, bool forward) const {
        const std::size_t n = grid.active_count();
        const double rho = grid.ring_radius();
        const double inv_r2 = 1.0 / (rho * rho);
        const double inv_h = 1.0 / grid.spacing();
        const auto scale = grid.ring_scales();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = forward ? i : n - 1 - i;
            const RingExtrema e = ring_extrema(grid, u.values(), k);
            const auto ring = grid.ring(k);
            const double sh = scale[e.arg_max], sl = scale[e.arg_min];
            const double vh = grid.closure_value(ring[e.arg_max], u.values());
            const double vl = grid.closure_value(ring[e.arg_min], u.values());
            double diag = -(sh + sl) * inv_r2 + zero_order[k] + shift;
            double num = rhs[k] - (sh * vh + sl * vl) * inv_r2;
            for (int axis = 0; axis < grid.dimension(); ++axis) {
                const double bi = b(k, axis);
                if (bi > 0.0) {
                    num -= bi * inv_h * grid.closure_value(grid.axis_neighbor(k, axis, +1), u.values());
                    diag -= bi * inv_h;
                } else if (bi < 0.0) {
                    num += bi * inv_h * grid.closure_value(grid.axis_neighbor(k, axis, -1), u.values());
                    diag += bi * inv_h;
                }
            }
            u[k] = num / diag;
        }
    }
};

CoerciveSolver::CoerciveSolver(const Grid& grid, const VectorField& b, std::span<const double> zero_order,
                               double shift, const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>(grid, b, zero_order, shift, cfg)) {
    if (zero_order.size() != grid.active_count()) throw InvalidParams("zero-order field size mismatch");
    double worst = -std::numeric_limits<double>::infinity();
    for (double z : zero_order) worst = std::max(worst, z + shift);
    if (!(worst < 0.0)) throw NotCoercive(worst);
    c0_ = -worst;
}

CoerciveSolver::~CoerciveSolver() = default;

SteadySolution CoerciveSolver::solve(std::span<const double> rhs, const ScalarField& init, double target) {
    Impl& s = *impl_;
    const std::size_t n = s.grid.active_count();
    if (rhs.size() != n) throw InvalidParams("right-hand side size mismatch");
    ScalarField u = init.size() == n ? init : ScalarField(n);
    std::vector<double> buf;
    double r = s.residual(rhs, u, buf);
    int iterations = 0;
    auto done = [&] { return r <= std::max(target, s.floor(rhs, u)); };
    if (done()) return {std::move(u), 0, r};

    if (s.cfg.inner == InnerMethod::PolicyIteration && s.cfg.max_policy_iterations > 0) {
        ScalarField best = u;
        double best_r = r;
        int budget = s.cfg.max_policy_iterations;
        // true once the selection reproduces itself or the target is met
        auto iterate = [&](int limit, bool final) {
            Policy pol = select_policy(s.grid, u.values(), s.factorized ? &s.cached_policy : nullptr, s.tie(u));
            for (int it = 0; it < limit; ++it) {
                if (final && budget-- <= 0) return false;
                if (!s.factorized || pol != s.cached_policy) {
                    if (!s.factorize(pol)) return false;
                }
                if (!s.linear_solve(rhs, u)) return false;
                ++iterations;
                if (final) {
                    r = s.residual(rhs, u, buf);
                    if (r < best_r) {
                        best = u;
                        best_r = r;
                    }
                    if (done()) return true;
                }
                Policy next = select_policy(s.grid, u.values(), &pol, s.tie(u));
                if (next == pol) return true;
                pol = std::move(next);
            }
            return false;
        };

        if (iterate(8, true)) return {std::move(u), iterations, r};
        // the operator is max_i min_j of linear pieces; fixing the max slots
        // leaves a concave problem on which Howard's method is monotone
        auto nested = [&] {
            Policy pol = select_policy(s.grid, u.values(), nullptr, s.tie(u));
            for (;;) {
                do {
                    if (budget-- <= 0) return false;
                    if (!s.factorize(pol) || !s.linear_solve(rhs, u)) return false;
                    ++iterations;
                } while (reselect(s.grid, u.values(), pol, 1, s.tie(u)));
                r = s.residual(rhs, u, buf);
                if (r < best_r) {
                    best = u;
                    best_r = r;
                }
                if (done()) return true;
                if (!reselect(s.grid, u.values(), pol, 0, s.tie(u))) return false;
            }
        };
        if (nested()) return {std::move(u), iterations, r};
        // far from the solution the selection can cycle; walk the shift down
        // from a strongly damped problem instead
        const double base = s.shift;
        for (double extra = s.scale; extra > 1e-3 * std::abs(base); extra *= 0.5) {
            s.shift = base - extra;
            s.factorized = false;
            iterate(20, false);
        }
        s.shift = base;
        s.factorized = false;
        if (iterate(budget, true)) return {std::move(u), iterations, r};
        u = std::move(best);
        r = best_r;
    }

    const bool symmetric = s.cfg.sweep_order == SweepOrder::Symmetric;
    const bool forward = s.cfg.sweep_order != SweepOrder::Reverse;
    for (int sweep = 1; sweep <= s.cfg.max_sweeps; ++sweep) {
        s.sweep(u, rhs, symmetric ? (sweep % 2 == 1) : forward);
        ++iterations;
        if (sweep < 20 || sweep % 10 == 0) {
            r = s.residual(rhs, u, buf);
            if (done()) return {std::move(u), iterations, r};
        }
    }
    r = s.residual(rhs, u, buf);
    throw NoConvergence(iterations, r);
}

// ---------------------------------------------------------------------------

SteadySolution solve_negative_c(const SteadyProblem& problem, const SolverConfig& cfg,
                                const ScalarField* initial_guess) {
    cfg.validate();
    CoerciveSolver solver(problem.grid(), problem.b(), problem.c().values(), problem.lambda(), cfg);
    const ScalarField init = initial_guess ? *initial_guess : ScalarField(problem.grid().active_count());
    return solver.solve(problem.g().values(), init, cfg.tol);
}

namespace {

class MonotoneRunner {
public:
    MonotoneRunner(const SteadyProblem& p, const SolverConfig& cfg, const MonotoneOptions& opt)
        : p_(p), cfg_(cfg), opt_(opt), n_(p.grid().active_count()), shift_(p.c_sup() + 1.0),
          blowup_(cfg.blowup_for(p.g_sup())), scale_(p.coefficient_scale() + shift_) {}

    IterationOutcome run() {
        IterationOutcome out{Diverged{}, {}};
        IterationStats& st = out.stats;
        st.min_increment = std::numeric_limits<double>::infinity();

        if (p_.lambda() < -p_.c_sup()) {
            // c + λ is already uniformly negative
            SteadySolution sol = solve_negative_c(p_, cfg_, opt_.start);
            st.outer_steps = 1;
            st.inner_iterations = sol.iterations;
            st.sup_history.push_back(sol.u.sup_norm());
            if (opt_.record_iterates) st.iterates.push_back(sol.u);
            out.result = Converged{std::move(sol.u), sol.iterations, sol.residual};
            return out;
        }

        CoerciveSolver inner(p_.grid(), p_.b(), p_.c().values(), -shift_, cfg_);
        ScalarField u = opt_.start ? *opt_.start : ScalarField(n_);
        if (u.size() != n_) throw InvalidParams("start iterate size mismatch");
        if (opt_.record_iterates) st.iterates.push_back(u);
        st.sup_history.push_back(u.sup_norm());

        std::vector<double> rhs(n_);
        ScalarField res(n_);
        int doubling = 0;
        const double inner_target = 0.01 * cfg_.tol;
        const double amp = p_.lambda() + shift_;

        for (int step = 1; step <= cfg_.max_outer; ++step) {
            for (std::size_t k = 0; k < n_; ++k) rhs[k] = p_.g()[k] - amp * u[k];
            SteadySolution sol = inner.solve(rhs, u, inner_target);
            st.inner_iterations += sol.iterations;
            st.outer_steps = step;

            ScalarField next = std::move(sol.u);
            ScalarField d = next - u;
            st.min_increment = std::min(st.min_increment, d.min());
            const double sup_prev = u.sup_norm();
            const double sup = next.sup_norm();
            st.sup_history.push_back(sup);
            if (opt_.record_iterates) st.iterates.push_back(next);

            apply_operator(p_, next.values(), res.values());
            const double r = res.sup_norm();
            if (!next.all_finite() || sup >= blowup_) {
                out.result = Diverged{step, sup, false, "sup norm exceeded blowup threshold"};
                return out;
            }
            // at a fixed point the outer residual is the inner one
            const double reachable = std::max(roundoff(next), 2.0 * std::min(sol.residual, plausible(next)));
            if (std::isfinite(r) && r <= std::max(cfg_.tol, reachable)) {
                out.result = Converged{std::move(next), st.inner_iterations, r};
                return out;
            }
            doubling = (sup_prev > 0.0 && sup >= 2.0 * sup_prev) ? doubling + 1 : 0;
            if (doubling >= 10) {
                out.result = Diverged{step, sup, false, "sup norm doubled for 10 consecutive steps"};
                return out;
            }
            u = std::move(next);

            if (cfg_.accelerate) {
                Jump jump = newton_jump(u, res);
                if (!jump.accepted && !jump.diverged && step >= 2) jump = increment_jump(u, d, res);
                if (jump.diverged) {
                    st.sup_history.push_back(jump.w.sup_norm());
                    if (opt_.record_iterates) st.iterates.push_back(jump.w);
                    ++st.accelerations;
                    out.result = Diverged{step, jump.w.sup_norm(), false,
                                          "verified subsolution above blowup threshold"};
                    return out;
                }
                if (jump.accepted) {
                    st.min_increment = std::min(st.min_increment, (jump.w - u).min());
                    ++st.accelerations;
                    u = std::move(jump.w);
                    st.sup_history.push_back(u.sup_norm());
                    if (opt_.record_iterates) st.iterates.push_back(u);
                    doubling = 0;
                }
            }
        }
        out.result = Diverged{cfg_.max_outer, u.sup_norm(), true, "max_outer reached"};
        return out;
    }

private:
    struct Jump {
        bool accepted = false;
        bool diverged = false;
        ScalarField w;
    };

    double roundoff(const ScalarField& w) const { return 1e-13 * (scale_ * w.sup_norm() + p_.g_sup()); }

    // largest inner residual still attributable to round-off in the inner solves
    double plausible(const ScalarField& w) const { return 1e-11 * (scale_ * w.sup_norm() + p_.g_sup()); }

    double allowance(const ScalarField& w) const {
        return 1e-11 * std::max(1.0, p_.g_sup()) + 1e-12 * scale_ * w.sup_norm();
    }

    // w is a (round-off tolerant) subsolution of the λ-problem, lies above
    // `floor_field` and respects the ceiling
    bool acceptable(const ScalarField& w, const ScalarField& floor_field) const {
        const double slack = allowance(w);
        for (std::size_t k = 0; k < n_; ++k)
            if (!(w[k] >= floor_field[k] - slack)) return false;
        if (opt_.ceiling) {
            for (std::size_t k = 0; k < n_; ++k)
                if (w[k] > (*opt_.ceiling)[k] + cfg_.tol) return false;
        }
        ScalarField fw(n_);
        apply_operator(p_, w.values(), fw.values());
        for (std::size_t k = 0; k < n_; ++k)
            if (!(fw[k] >= -slack)) return false;
        return true;
    }

    // A landing point that is verified to be a subsolution lies below every
    // solution, so the monotone sequence restarted there has the same limit.

    // Newton step for F_λ[u] = g with the max/min selection frozen at u.
    Jump newton_jump(const ScalarField& u, const ScalarField& res) const {
        Jump jump;
        const Policy pol = select_policy(p_.grid(), u.values(), nullptr, 0.0);
        const SparseMatrix j = assemble(p_.grid(), p_.b(), p_.c().values(), p_.lambda(), pol);
        SparseLU lu;
        lu.compute(j);
        if (lu.info() != Eigen::Success) return jump;
        Eigen::Map<const Eigen::VectorXd> r(res.values().data(), static_cast<Eigen::Index>(n_));
        const Eigen::VectorXd step = -lu.solve(r);
        if (lu.info() != Eigen::Success || !step.allFinite()) return jump;
        if (step.maxCoeff() < 0.0) {
            // λ lies above the principal eigenvalue of the frozen operator and
            // -step approximates its positive eigenvector
            if (opt_.ceiling) return jump;
            ScalarField e(n_);
            for (std::size_t k = 0; k < n_; ++k) e[k] = -step[static_cast<Eigen::Index>(k)];
            return certify_growth(u, e);
        }
        for (double theta : {1.0, 0.999, 0.99, 0.9, 0.5}) {
            ScalarField w = u;
            for (std::size_t k = 0; k < n_; ++k) w[k] += theta * step[static_cast<Eigen::Index>(k)];
            if (!acceptable(w, u)) continue;
            jump.diverged = !opt_.ceiling && w.sup_norm() >= blowup_;
            jump.accepted = !jump.diverged;
            jump.w = std::move(w);
            return jump;
        }
        return jump;
    }

    // For a positive direction e, a verified subsolution u + t e reaching
    // the blowup level shows that the iteration is unbounded.
    Jump certify_growth(const ScalarField& u, const ScalarField& e) const {
        Jump jump;
        const double emax = e.max();
        if (!(e.min() >= 0.0) || !(emax > 0.0)) return jump;
        double t = 2.0 * blowup_ / emax;
        for (int tries = 0; tries < 8 && t >= 1.0; ++tries, t *= 1e-2) {
            ScalarField w = u;
            for (std::size_t k = 0; k < n_; ++k) w[k] += t * e[k];
            if (!acceptable(w, u)) continue;
            jump.diverged = w.sup_norm() >= blowup_;
            jump.accepted = !jump.diverged;
            jump.w = std::move(w);
            return jump;
        }
        return jump;
    }

    // Jump u -> u + t d along the last increment. Under the linearization,
    // F[u + t d] - g = res + t F[d]; the largest t keeping this nonnegative
    // is min over {F[d] < 0} of res/(-F[d]). When F[d] >= 0 everywhere, d is
    // a nonnegative subsolution of the homogeneous problem, which cannot
    // exist below the principal eigenvalue.
    Jump increment_jump(const ScalarField& u, const ScalarField& d, const ScalarField& res) const {
        Jump jump;
        const double dmax = d.max();
        if (!(dmax > 0.0) || d.min() < -allowance(u)) return jump;

        ScalarField fd(n_);
        evaluate_operator(p_.grid(), p_.b(), p_.c().values(), p_.lambda(), {}, d.values(), fd.values());
        double t_lin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n_; ++k)
            if (fd[k] < 0.0) t_lin = std::min(t_lin, std::max(res[k], 0.0) / -fd[k]);

        auto land = [&](double t) {
            ScalarField w = u;
            for (std::size_t k = 0; k < n_; ++k) w[k] += t * d[k];
            return w;
        };

        if (std::isinf(t_lin)) {
            if (opt_.ceiling || d.min() < 0.0) return jump;
            return certify_growth(u, d);
        }
        for (double theta : {0.999, 0.99, 0.9, 0.5}) {
            const double t = theta * t_lin;
            if (t < 1.0) break;
            ScalarField w = land(t);
            if (!acceptable(w, u)) continue;
            jump.accepted = true;
            jump.w = std::move(w);
            return jump;
        }
        return jump;
    }

    const SteadyProblem& p_;
    const SolverConfig& cfg_;
    const MonotoneOptions& opt_;
    std::size_t n_;
    double shift_;
    double blowup_;
    double scale_;
};

}  // namespace

IterationOutcome monotone_iteration(const SteadyProblem& problem, const SolverConfig& cfg,
                                    const MonotoneOptions& options) {
    cfg.validate();
    if (!options.allow_general_g && problem.g().max() > 0.0)
        throw InvalidParams("monotone iteration requires g <= 0");
    if (options.ceiling && options.ceiling->size() != problem.grid().active_count())
        throw InvalidParams("ceiling size mismatch");
    return MonotoneRunner(problem, cfg, options).run();
}

IterationOutcome monotone_iteration(const GridPtr& grid, const VectorField& b, const ScalarField& c, double lambda,
                                    const ScalarField& g, const SolverConfig& cfg) {
    return monotone_iteration(SteadyProblem(grid, b, c, g, lambda), cfg);
}

SteadySolution solve_general_rhs(const SteadyProblem& problem, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t n = problem.grid().active_count();
    if (problem.g_sup() == 0.0) return {ScalarField(n), 0, 0.0};
    if (problem.lambda() + problem.c_sup() < 0.0) return solve_negative_c(problem, cfg);

    const SteadyProblem barrier = problem.with_g(ScalarField(n, -problem.g_sup()));
    IterationOutcome upper = monotone_iteration(barrier, cfg);
    if (!upper.converged()) {
        const auto& d = upper.divergence();
        throw DivergenceError(d.outer_step, d.sup_norm);
    }
    const ScalarField v0 = upper.solution().u;
    const ScalarField u0 = -v0;  // the operator is odd, so -v0 solves the |g|∞ problem

    MonotoneOptions opts;
    opts.start = &u0;
    opts.ceiling = &v0;
    opts.allow_general_g = true;
    IterationOutcome sol = monotone_iteration(problem, cfg, opts);
    if (!sol.converged()) {
        const auto& d = sol.divergence();
        throw DivergenceError(d.outer_step, d.sup_norm);
    }
    const Converged& c = sol.solution();
    return {c.u, upper.stats.inner_iterations + sol.stats.inner_iterations, c.residual};
}

}  // namespace infeig
