#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "infeig/errors.hpp"
#include "infeig/io.hpp"
#include "infeig_app/commands.hpp"

namespace fs = std::filesystem;
using namespace infeig;

int main(int argc, char** argv) {
    CLI::App app{"Principal eigenvalue and maximum-principle toolkit for the normalized infinity Laplacian"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::vector<int> only;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "key=value config file");
        if (needs_config) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (default: output.dir or ./out)");
        sub->add_option("--set", overrides, "override one config key, key=value")->take_all();
    };
    add_common(app.add_subcommand("solve", "solve the steady problem"), true);
    add_common(app.add_subcommand("eigen", "estimate the principal eigenvalue"), true);
    add_common(app.add_subcommand("evolve", "run the parabolic evolution"), true);
    add_common(app.add_subcommand("mpcheck", "check the maximum principle at one lambda"), true);
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--out", out_dir, "output directory (default ./out)");
    verify->add_option("--only", only, "criteria to run (default: all)")->check(CLI::Range(1, 8));

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    const std::string started = app::utc_timestamp();
    const auto t0 = std::chrono::steady_clock::now();
    app::CommandOutput result;
    fs::path out = out_dir.empty() ? fs::path("out") : fs::path(out_dir);
    try {
        if (sub == "verify") {
            result = app::run_verify(only, out, std::cout);
        } else {
            const app::RunConfig cfg = app::load_run_config(config_path, overrides);
            if (out_dir.empty()) out = cfg.out_dir;
            if (sub == "solve") result = app::run_solve(cfg, out, std::cout);
            if (sub == "eigen") result = app::run_eigen(cfg, out, std::cout);
            if (sub == "evolve") result = app::run_evolve(cfg, out, std::cout);
            if (sub == "mpcheck") result = app::run_mpcheck(cfg, out, std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error [ConfigError]: " << (config_path.empty() ? std::string("config") : config_path) << ": byte offset "
                  << e.offset() << ": " << e.what() << '\n';
        result.exit_code = app::kConfigError;
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        result.exit_code = app::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        result.exit_code = app::kConfigError;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    try {
        io::write_file(out / "run_meta.json", app::run_meta_json(sub, config_path, overrides, started,
                                                                 app::utc_timestamp(), elapsed, result));
    } catch (const std::exception& e) {
        std::cerr << "warning: " << e.what() << '\n';
    }
    return result.exit_code;
}
