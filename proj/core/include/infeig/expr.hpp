#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "infeig/geometry.hpp"

namespace infeig::expr {

/// Evaluation point: Cartesian coordinates plus the radial coordinate
/// r = |x - center| of the owning domain.
struct Variables {
    double x = 0.0;
    double y = 0.0;
    double r = 0.0;

    static Variables at(const Point& p, const Point& center);
};

enum class Op : std::uint8_t {
    Constant,
    VarX,
    VarY,
    VarR,
    Neg,
    Abs,
    Exp,
    Sin,
    Cos,
    Sqrt,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Min,
    Max,
    Piecewise,
};

/// Flat node storage. Children are indices into the owning Ast's node table;
/// Piecewise keeps its selector variable in `var`, and its threshold/value
/// operands in `args` as (t1, v1, t2, v2, ..., v_last).
struct Node {
    Op op = Op::Constant;
    double value = 0.0;
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
    Op var = Op::VarX;
    std::vector<std::int32_t> args;
};

/// Immutable expression tree. Evaluation walks node indices and allocates nothing.
class Ast {
public:
    Ast() = default;

    double eval(const Variables& v) const;
    double eval(const Point& p, const Point& center) const { return eval(Variables::at(p, center)); }

    /// Fully parenthesized text that parses back to an equivalent tree.
    std::string print() const;

    bool is_constant() const;
    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::int32_t root() const noexcept { return root_; }

    /// Construction helpers, used by the parser and by test generators.
    std::int32_t add(Node node);
    void set_root(std::int32_t root) { root_ = root; }

private:
    double eval_node(std::int32_t id, const Variables& v) const;
    void print_node(std::int32_t id, std::string& out) const;

    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

/// Parses an expression over x, y, r. Precedence, tightest first:
/// ^ (right associative), unary minus, * and /, + and -.
/// Functions: abs exp sin cos sqrt (one argument), min max (two),
/// piecewise(var, t1, v1, ..., tn, vn, v_else) with increasing thresholds,
/// selecting v_k for the first k with var <= t_k.
/// Throws SyntaxError (with byte offset) or UnknownIdentifier.
Ast parse(std::string_view source);

/// eval(parse(src), point): convenience.
double eval(const Ast& ast, const Variables& v);

}  // namespace infeig::expr
