#include "infeig_app/commands.hpp"

#include <chrono>
#include <ctime>
#include <ostream>

#include <nlohmann/json.hpp>

#include "infeig/eigensolver.hpp"
#include "infeig/errors.hpp"
#include "infeig/evolution.hpp"
#include "infeig/io.hpp"
#include "infeig_app/acceptance.hpp"

namespace infeig::app {

namespace fs = std::filesystem;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::NoConvergence:
        case ErrorCode::Diverged:
        case ErrorCode::BracketFailure:
        case ErrorCode::Inconclusive:
        case ErrorCode::NotCoercive:
            return kSolverFailure;
        default:
            return kConfigError;
    }
}

namespace {

void emit(CommandOutput& out, const fs::path& path, const std::string& contents) {
    io::write_file(path, contents);
    out.artifacts.push_back(path);
}

ScalarField shifted(const ScalarField& c, double lambda) {
    ScalarField out = c;
    for (double& v : out.raw()) v += lambda;
    return out;
}

}  // namespace

CommandOutput run_solve(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    CommandOutput result;
    const Inputs in = materialize(cfg);
    const SteadyProblem problem(in.grid, in.b, in.c, in.g, cfg.lambda);
    SteadySolution sol;
    if (in.c.max() + cfg.lambda < 0.0) {
        sol = solve_negative_c(problem, cfg.solver);
    } else if (in.g.max() <= 0.0) {
        IterationOutcome it = monotone_iteration(problem, cfg.solver);
        if (!it.converged()) {
            const auto& d = std::get<Diverged>(it.result);
            log << "monotone iteration stopped: " << d.reason << '\n';
            throw DivergenceError(d.outer_step, d.sup_norm);
        }
        const Converged& c = it.solution();
        sol = SteadySolution{c.u, it.stats.outer_steps, c.residual};
    } else {
        sol = solve_general_rhs(problem, cfg.solver);
    }
    emit(result, out / "grid.json", io::grid_json(*in.grid));
    emit(result, out / "solution.csv", io::field_csv(*in.grid, sol.u, "u"));
    emit(result, out / "solution.json", io::solution_json(sol));
    log << "residual " << io::format_double(sol.residual) << " after " << sol.iterations << " iterations\n";
    return result;
}

CommandOutput run_eigen(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    CommandOutput result;
    const Inputs in = materialize(cfg);
    const EigenEstimate est = estimate_lambda_bar(in.grid, in.b, in.c, cfg.solver, cfg.bisect_tol);
    emit(result, out / "grid.json", io::grid_json(*in.grid));
    emit(result, out / "eigen.json", io::eigen_json(est));
    emit(result, out / "phi.csv", io::field_csv(*in.grid, est.eigenfunction, "phi"));
    log << "lambda_bar " << io::format_double(est.lambda_bar) << " in [" << io::format_double(est.lambda_lo) << ", "
        << io::format_double(est.lambda_hi) << "]\n";
    return result;
}

CommandOutput run_evolve(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    CommandOutput result;
    const Inputs in = materialize(cfg);
    const SteadyProblem problem(in.grid, in.b, in.c, in.g, cfg.lambda);

    EvolutionConfig ec;
    ec.dt = cfg.evolve.dt;
    ec.output_interval = cfg.evolve.output_interval;
    std::optional<EigenEstimate> est;
    if (cfg.evolve.decay_check) {
        est = estimate_lambda_bar(in.grid, in.b, shifted(in.c, cfg.lambda), cfg.solver, cfg.bisect_tol);
        ec.weight = &est->eigenfunction;
        ec.weight_rate = est->lambda_bar;
    }
    const EvolutionTrace trace = run_evolution(in.h0, problem, cfg.evolve.T, ec);
    std::optional<DecayCheck> check;
    if (est) check = check_decay_bound(trace, est->eigenfunction, est->lambda_bar, in.h0);

    emit(result, out / "trace.csv", io::trace_csv(trace));
    emit(result, out / "summary.json", io::evolution_summary_json(trace, check ? &*check : nullptr));
    log << "fitted_rate " << io::format_double(trace.fitted_rate) << " over " << trace.steps << " steps\n";
    if (check) log << "decay bound " << (check->pass ? "holds" : "violated") << ", slack " << check->slack << '\n';
    return result;
}

CommandOutput run_mpcheck(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    CommandOutput result;
    const Inputs in = materialize(cfg);
    const MpcheckSettings& mp = cfg.mpcheck;

    bool need_eigen = mp.lambda_offset.has_value();
    for (const auto& s : mp.seeds) need_eigen |= s == "eigenfunction";
    std::optional<EigenEstimate> est;
    if (need_eigen) est = estimate_lambda_bar(in.grid, in.b, in.c, cfg.solver, cfg.bisect_tol);

    double lambda = cfg.lambda;
    if (mp.lambda) lambda = *mp.lambda;
    if (mp.lambda_offset) lambda = est->lambda_bar + *mp.lambda_offset;

    std::vector<ScalarField> seeds;
    for (const auto& s : mp.seeds) seeds.push_back(seed_field(s, *in.grid, est ? &est->eigenfunction : nullptr));

    MaxPrincipleOptions opt;
    opt.decay_threshold = mp.decay;
    opt.blowup = mp.blowup;
    opt.t_max = mp.t_max;
    opt.bisect_tol = cfg.bisect_tol;
    if (est) opt.lambda_bar = est->lambda_bar;
    const MaxPrincipleReport report = check_maximum_principle(in.grid, in.b, in.c, lambda, seeds, cfg.solver, opt);
    emit(result, out / "mpcheck.json", io::max_principle_json(report));
    log << "lambda " << io::format_double(lambda) << ": maximum principle " << (report.holds() ? "holds" : "fails")
        << '\n';
    return result;
}

CommandOutput run_verify(const std::vector<int>& only, const fs::path& out, std::ostream& log) {
    CommandOutput result;
    std::vector<CriterionResult> results;
    for (int id : only.empty() ? criterion_ids() : only) {
        results.push_back(run_criterion(id));
        log << format_line(results.back()) << std::endl;
        if (!results.back().pass()) result.exit_code = kVerificationFailure;
    }
    emit(result, out / "verify.json", report_json(results));
    return result;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string run_meta_json(const std::string& subcommand, const std::string& config_path,
                          const std::vector<std::string>& overrides, const std::string& started,
                          const std::string& finished, double elapsed, const CommandOutput& result) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["config"] = config_path;
    j["overrides"] = overrides;
    j["started"] = started;
    j["finished"] = finished;
    j["elapsed_seconds"] = elapsed;
    j["exit_code"] = result.exit_code;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& p : result.artifacts) files.push_back(p.filename().string());
    j["artifacts"] = files;
    return j.dump(2) + "\n";
}

}  // namespace infeig::app
