#pragma once

#include <filesystem>
#include <string>

#include "infeig/eigensolver.hpp"
#include "infeig/evolution.hpp"
#include "infeig/fields.hpp"
#include "infeig/geometry.hpp"
#include "infeig/steady_solver.hpp"

namespace infeig::io {

/// %.17g
std::string format_double(double v);

/// {domain, h, s, counts, flags}
std::string grid_json(const Grid& grid);
/// index,x,y,class
std::string nodes_csv(const Grid& grid);
/// index,x,y,<column>
std::string field_csv(const Grid& grid, const ScalarField& field, const std::string& column);

/// {lambda_lo, lambda_hi, lambda_bar, residual, steps, history[], flags[]}
std::string eigen_json(const EigenEstimate& est);

/// t,sup_norm,weighted_ratio
std::string trace_csv(const EvolutionTrace& trace);
/// {fitted_rate, dt, T, cfl_margin, pass, slack}; pass/slack are null without a check
std::string evolution_summary_json(const EvolutionTrace& trace, const DecayCheck* check);

/// {residual, iterations, sup_norm, min, max}
std::string solution_json(const SteadySolution& sol);

std::string max_principle_json(const MaxPrincipleReport& report);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace infeig::io
