#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace infeig {

enum class ErrorCode {
    InvalidParams,
    DomainTooCoarse,
    NotBoundaryNode,
    ZeroVector,
    SyntaxError,
    UnknownIdentifier,
    EvalError,
    NotCoercive,
    NoConvergence,
    Diverged,
    BracketFailure,
    Inconclusive,
    CflViolation,
    NonpositiveWeight,
    ConfigError,
};

const char* to_string(ErrorCode code);

/// Base of every error raised by the library. Callers that only need the
/// category switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error(ErrorCode::InvalidParams, what) {}
};

class DomainTooCoarse : public Error {
public:
    explicit DomainTooCoarse(const std::string& what) : Error(ErrorCode::DomainTooCoarse, what) {}
};

class NotBoundaryNode : public Error {
public:
    explicit NotBoundaryNode(std::size_t node)
        : Error(ErrorCode::NotBoundaryNode, "node " + std::to_string(node) + " is not a boundary node"),
          node_(node) {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class ZeroVector : public Error {
public:
    ZeroVector() : Error(ErrorCode::ZeroVector, "sigma(p) is undefined for p = 0") {}
};

/// Parse failure. offset() is a byte offset into the source text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
public:
    UnknownIdentifier(std::string name, std::size_t offset)
        : Error(ErrorCode::UnknownIdentifier,
                "unknown identifier '" + name + "' at offset " + std::to_string(offset)),
          name_(std::move(name)), offset_(offset) {}

    const std::string& name() const noexcept { return name_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string name_;
    std::size_t offset_;
};

class EvalError : public Error {
public:
    explicit EvalError(const std::string& what) : Error(ErrorCode::EvalError, what) {}
};

class NotCoercive : public Error {
public:
    explicit NotCoercive(double max_zero_order)
        : Error(ErrorCode::NotCoercive,
                "zero-order coefficient c + lambda is not uniformly negative (max = " +
                    std::to_string(max_zero_order) + ")") {}
};

class NoConvergence : public Error {
public:
    NoConvergence(int iterations, double residual)
        : Error(ErrorCode::NoConvergence, "no convergence after " + std::to_string(iterations) +
                                              " iterations (residual " + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// A monotone iteration that was required to converge blew up instead,
/// typically because λ is at or above the principal eigenvalue.
class DivergenceError : public Error {
public:
    DivergenceError(int outer_step, double sup_norm)
        : Error(ErrorCode::Diverged, "monotone iteration diverged at outer step " + std::to_string(outer_step) +
                                         " (sup norm " + std::to_string(sup_norm) + ")"),
          outer_step_(outer_step), sup_norm_(sup_norm) {}
    int outer_step() const noexcept { return outer_step_; }
    double sup_norm() const noexcept { return sup_norm_; }

private:
    int outer_step_;
    double sup_norm_;
};

class BracketFailure : public Error {
public:
    explicit BracketFailure(const std::string& what) : Error(ErrorCode::BracketFailure, what) {}
};

class Inconclusive : public Error {
public:
    explicit Inconclusive(double t_max)
        : Error(ErrorCode::Inconclusive, "no verdict within time budget T_max = " + std::to_string(t_max)),
          t_max_(t_max) {}
    double t_max() const noexcept { return t_max_; }

private:
    double t_max_;
};

class CflViolation : public Error {
public:
    CflViolation(double dt, double dt_max)
        : Error(ErrorCode::CflViolation,
                "time step " + std::to_string(dt) + " exceeds CFL bound " + std::to_string(dt_max)) {}
};

class NonpositiveWeight : public Error {
public:
    explicit NonpositiveWeight(double min_weight)
        : Error(ErrorCode::NonpositiveWeight,
                "weight must be positive, min = " + std::to_string(min_weight)) {}
};

class ConfigError : public Error {
public:
    ConfigError(std::size_t offset, const std::string& what)
        : Error(ErrorCode::ConfigError, what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace infeig
