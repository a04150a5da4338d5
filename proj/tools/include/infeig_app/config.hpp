#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infeig/expr.hpp"
#include "infeig/fields.hpp"
#include "infeig/geometry.hpp"
#include "infeig/oracles.hpp"
#include "infeig/steady_solver.hpp"

namespace infeig::app {

struct ConfigEntry {
    std::string value;
    std::size_t key_offset = 0;
    std::size_t value_offset = 0;
    /// empty for the config file, otherwise the --set text
    std::string override_text;
};

/// Flat `dotted.key = value` text. '#' starts a comment; blank lines are
/// skipped. Offsets in errors are byte offsets into the source text.
class RawConfig {
public:
    static RawConfig parse(std::string_view text);
    static RawConfig load(const std::filesystem::path& path);

    /// Applies one `key=value` override on top of the file contents.
    void set(std::string_view assignment);

    const ConfigEntry* find(const std::string& key) const;
    const std::map<std::string, ConfigEntry>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, ConfigEntry> entries_;
};

struct EvolveSettings {
    double T = 1.0;
    double output_interval = 0.0;
    double dt = 0.0;
    /// also compute (λ̄, φ) and check the weighted decay bound
    bool decay_check = false;
};

struct MpcheckSettings {
    /// "bump", "constant", "eigenfunction" or an expression
    std::vector<std::string> seeds{"bump", "constant", "eigenfunction"};
    std::optional<double> lambda;
    std::optional<double> lambda_offset;  ///< λ = λ̄_h + offset
    double t_max = 1000.0;
    double blowup = 1e3;
    double decay = 1e-6;
};

struct RunConfig {
    Domain domain{Interval{}};
    double h = 1.0 / 32.0;
    int s = 1;

    std::string bx = "0";
    std::string by = "0";
    std::string c = "0";
    std::string g = "0";
    std::string h0 = "1";
    double lambda = 0.0;
    /// replaces coeff.c with the sign-changing radial field
    std::optional<Example43Params> example43;

    SolverConfig solver;
    double bisect_tol = 1e-4;
    EvolveSettings evolve;
    MpcheckSettings mpcheck;
    std::filesystem::path out_dir = "out";
};

/// Validates every key and value. Throws ConfigError.
RunConfig build_run_config(const RawConfig& raw);

RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides);

/// Grid and sampled coefficient fields of a run.
struct Inputs {
    GridPtr grid;
    VectorField b;
    ScalarField c;
    ScalarField g;
    ScalarField h0;
};

Inputs materialize(const RunConfig& cfg);

/// Seed field by name ("bump", "constant", "eigenfunction") or expression.
ScalarField seed_field(const std::string& source, const Grid& grid, const ScalarField* eigenfunction);

}  // namespace infeig::app
