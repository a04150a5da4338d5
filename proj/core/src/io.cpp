#include "infeig/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "infeig/errors.hpp"

namespace infeig::io {

using nlohmann::json;

namespace {

// NaN and infinities are not JSON numbers
json number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

json domain_json(const Domain& d) {
    json j;
    j["type"] = d.name();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                j["a"] = s.a;
                j["b"] = s.b;
            } else if constexpr (std::is_same_v<T, Disk>) {
                j["center"] = {s.center[0], s.center[1]};
                j["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, Annulus>) {
                j["center"] = {s.center[0], s.center[1]};
                j["inner_radius"] = s.inner_radius;
                j["outer_radius"] = s.outer_radius;
            } else {
                j["lo"] = {s.lo[0], s.lo[1]};
                j["hi"] = {s.hi[0], s.hi[1]};
            }
        },
        d.shape());
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string grid_json(const Grid& grid) {
    json j;
    j["domain"] = domain_json(grid.domain());
    j["h"] = grid.spacing();
    j["s"] = grid.ring_multiple();
    j["counts"] = {{"interior", grid.count(NodeClass::Interior)},
                   {"boundary", grid.count(NodeClass::Boundary)},
                   {"exterior", grid.count(NodeClass::Exterior)},
                   {"active", grid.active_count()},
                   {"direction_pairs", grid.direction_pairs()}};
    json flags = json::array();
    if (grid.domain().has_corners()) flags.push_back("domain_has_corners");
    j["flags"] = flags;
    return j.dump(2) + "\n";
}

std::string nodes_csv(const Grid& grid) {
    std::ostringstream os;
    os << "index,x,y,class\n";
    for (std::size_t n = 0; n < grid.node_count(); ++n) {
        const Point& p = grid.coordinate(n);
        os << n << ',' << format_double(p[0]) << ',' << format_double(p[1]) << ',' << to_string(grid.node_class(n))
           << '\n';
    }
    return os.str();
}

std::string field_csv(const Grid& grid, const ScalarField& field, const std::string& column) {
    if (field.size() != grid.active_count()) throw InvalidParams("field size does not match the grid");
    std::ostringstream os;
    os << "index,x,y," << column << '\n';
    for (std::size_t k = 0; k < field.size(); ++k) {
        const Point& p = grid.active_coordinate(k);
        os << k << ',' << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(field[k]) << '\n';
    }
    return os.str();
}

std::string eigen_json(const EigenEstimate& est) {
    json j;
    j["lambda_lo"] = number(est.lambda_lo);
    j["lambda_hi"] = number(est.lambda_hi);
    j["lambda_bar"] = number(est.lambda_bar);
    j["residual"] = number(est.eigen_residual);
    j["steps"] = est.bisection_steps;
    json hist = json::array();
    for (const auto& p : est.history) {
        hist.push_back({{"lambda", number(p.lambda)},
                        {"outcome", p.converged ? "converged" : "diverged"},
                        {"inconclusive", p.inconclusive},
                        {"outer_steps", p.outer_steps}});
    }
    j["history"] = hist;
    j["flags"] = est.flags;
    return j.dump(2) + "\n";
}

std::string trace_csv(const EvolutionTrace& trace) {
    std::ostringstream os;
    os << "t,sup_norm,weighted_ratio\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        os << format_double(trace.times[i]) << ',' << format_double(trace.sup_norm[i]) << ',';
        if (i < trace.weighted_ratio.size()) os << format_double(trace.weighted_ratio[i]);
        os << '\n';
    }
    return os.str();
}

std::string evolution_summary_json(const EvolutionTrace& trace, const DecayCheck* check) {
    json j;
    j["fitted_rate"] = number(trace.fitted_rate);
    j["dt"] = trace.dt;
    j["T"] = trace.T;
    j["steps"] = trace.steps;
    j["cfl_margin"] = trace.cfl_margin;
    j["final_sup_norm"] = number(trace.sup_norm.empty() ? NAN : trace.sup_norm.back());
    if (check) {
        j["pass"] = check->pass;
        j["slack"] = number(check->slack);
    } else {
        j["pass"] = nullptr;
        j["slack"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string solution_json(const SteadySolution& sol) {
    json j;
    j["residual"] = number(sol.residual);
    j["iterations"] = sol.iterations;
    j["sup_norm"] = number(sol.u.sup_norm());
    j["min"] = number(sol.u.min());
    j["max"] = number(sol.u.max());
    return j.dump(2) + "\n";
}

std::string max_principle_json(const MaxPrincipleReport& report) {
    json j;
    j["lambda"] = number(report.lambda);
    j["lambda_bar"] = report.lambda_bar ? number(*report.lambda_bar) : json(nullptr);
    j["verdict"] = report.holds() ? "holds" : "fails";
    json seeds = json::array();
    for (const auto& s : report.seeds) {
        seeds.push_back({{"verdict", to_string(s.verdict)},
                         {"time", number(s.time)},
                         {"final_max", number(s.final_max)},
                         {"steps", s.steps}});
    }
    j["seeds"] = seeds;
    return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidParams("cannot open " + path.string() + " for writing");
    os << contents;
    if (!os) throw InvalidParams("failed writing " + path.string());
}

}  // namespace infeig::io
