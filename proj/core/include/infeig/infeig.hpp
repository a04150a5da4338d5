#pragma once

#include "infeig/eigensolver.hpp"
#include "infeig/errors.hpp"
#include "infeig/evolution.hpp"
#include "infeig/expr.hpp"
#include "infeig/fields.hpp"
#include "infeig/geometry.hpp"
#include "infeig/io.hpp"
#include "infeig/operators.hpp"
#include "infeig/oracles.hpp"
#include "infeig/steady_solver.hpp"
