#include "infeig/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "infeig/errors.hpp"

namespace infeig {

namespace {
std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ", ";
        out += expected[i];
    }
    return out;
}
}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : Error(ErrorCode::SyntaxError, "syntax error at offset " + std::to_string(offset) + ": " + detail +
                                        (expected.empty() ? "" : " (expected " + join_expected(expected) + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace infeig

namespace infeig::expr {

Variables Variables::at(const Point& p, const Point& center) {
    return {p[0], p[1], std::hypot(p[0] - center[0], p[1] - center[1])};
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Number: return "number";
        case Tok::Ident: return "identifier";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            // digits [. digits] [e [+-] digits]
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
                if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                    i = j;
                    while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                }
            }
            const std::string_view text = src.substr(start, i - start);
            double value = 0.0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
            if (res.ec != std::errc() || res.ptr != text.data() + text.size())
                throw SyntaxError(start, {"number"}, "malformed number '" + std::string(text) + "'");
            out.push_back({Tok::Number, start, text, value});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            out.push_back({Tok::Ident, start, src.substr(start, i - start)});
            continue;
        }
        Tok kind;
        switch (ch) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            default:
                throw SyntaxError(start, {"operator", "number", "identifier"},
                                  std::string("unexpected character '") + ch + "'");
        }
        out.push_back({kind, start, src.substr(start, 1)});
        ++i;
    }
    out.push_back({Tok::End, src.size(), {}});
    return out;
}

std::optional<Op> unary_function(std::string_view name) {
    if (name == "abs") return Op::Abs;
    if (name == "exp") return Op::Exp;
    if (name == "sin") return Op::Sin;
    if (name == "cos") return Op::Cos;
    if (name == "sqrt") return Op::Sqrt;
    return std::nullopt;
}

std::optional<Op> binary_function(std::string_view name) {
    if (name == "min") return Op::Min;
    if (name == "max") return Op::Max;
    return std::nullopt;
}

std::optional<Op> variable(std::string_view name) {
    if (name == "x") return Op::VarX;
    if (name == "y") return Op::VarY;
    if (name == "r") return Op::VarR;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

    Ast run() {
        const auto root = parse_sum();
        if (peek().kind != Tok::End) fail({"operator", "end of input"}, "trailing input");
        ast_.set_root(root);
        return std::move(ast_);
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) const {
        throw SyntaxError(peek().offset, std::move(expected),
                          detail + ", found " + describe(peek().kind));
    }

    void expect(Tok kind) {
        if (peek().kind != kind) fail({describe(kind)}, "unexpected token");
        ++pos_;
    }

    std::int32_t binary(Op op, std::int32_t lhs, std::int32_t rhs) {
        Node n;
        n.op = op;
        n.lhs = lhs;
        n.rhs = rhs;
        return ast_.add(std::move(n));
    }

    std::int32_t parse_sum() {
        auto lhs = parse_product();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Op op = next().kind == Tok::Plus ? Op::Add : Op::Sub;
            lhs = binary(op, lhs, parse_product());
        }
        return lhs;
    }

    std::int32_t parse_product() {
        auto lhs = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Op op = next().kind == Tok::Star ? Op::Mul : Op::Div;
            lhs = binary(op, lhs, parse_unary());
        }
        return lhs;
    }

    std::int32_t parse_unary() {
        if (peek().kind == Tok::Minus) {
            ++pos_;
            Node n;
            n.op = Op::Neg;
            n.lhs = parse_unary();
            return ast_.add(std::move(n));
        }
        if (peek().kind == Tok::Plus) {
            ++pos_;
            return parse_unary();
        }
        return parse_power();
    }

    // ^ binds tighter than unary minus on its left; its exponent may carry a sign.
    std::int32_t parse_power() {
        const auto base = parse_primary();
        if (peek().kind == Tok::Caret) {
            ++pos_;
            return binary(Op::Pow, base, parse_unary());
        }
        return base;
    }

    std::int32_t parse_primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::Number: {
                ++pos_;
                Node n;
                n.op = Op::Constant;
                n.value = tok.number;
                return ast_.add(std::move(n));
            }
            case Tok::LParen: {
                ++pos_;
                const auto inner = parse_sum();
                expect(Tok::RParen);
                return inner;
            }
            case Tok::Ident: return parse_identifier();
            default: fail({"number", "identifier", "'('"}, "expected an operand");
        }
    }

    std::int32_t parse_identifier() {
        const Token tok = next();
        if (const auto v = variable(tok.text)) {
            Node n;
            n.op = *v;
            return ast_.add(std::move(n));
        }
        if (tok.text == "pi") {
            Node n;
            n.op = Op::Constant;
            n.value = 3.14159265358979323846;
            return ast_.add(std::move(n));
        }
        if (const auto f = unary_function(tok.text)) {
            expect(Tok::LParen);
            Node n;
            n.op = *f;
            n.lhs = parse_sum();
            expect(Tok::RParen);
            return ast_.add(std::move(n));
        }
        if (const auto f = binary_function(tok.text)) {
            expect(Tok::LParen);
            const auto a = parse_sum();
            expect(Tok::Comma);
            const auto b = parse_sum();
            expect(Tok::RParen);
            return binary(*f, a, b);
        }
        if (tok.text == "piecewise") return parse_piecewise();
        throw UnknownIdentifier(std::string(tok.text), tok.offset);
    }

    std::int32_t parse_piecewise() {
        expect(Tok::LParen);
        const Token sel = peek();
        std::optional<Op> var;
        if (sel.kind == Tok::Ident) var = variable(sel.text);
        if (!var) {
            if (sel.kind == Tok::Ident && !unary_function(sel.text) && !binary_function(sel.text) &&
                sel.text != "piecewise" && sel.text != "pi")
                throw UnknownIdentifier(std::string(sel.text), sel.offset);
            fail({"x", "y", "r"}, "piecewise selector must be a coordinate variable");
        }
        ++pos_;
        std::vector<std::int32_t> operands;
        std::vector<std::size_t> offsets;
        while (peek().kind == Tok::Comma) {
            ++pos_;
            offsets.push_back(peek().offset);
            operands.push_back(parse_sum());
        }
        expect(Tok::RParen);
        if (operands.size() < 3 || operands.size() % 2 == 0)
            throw SyntaxError(sel.offset, {"threshold, value pairs followed by a default value"},
                              "piecewise needs an odd number (>= 3) of operands after the selector");
        double previous = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 < operands.size(); k += 2) {
            const Node& t = ast_.nodes()[static_cast<std::size_t>(operands[k])];
            const bool constant = t.op == Op::Constant ||
                                  (t.op == Op::Neg && ast_.nodes()[static_cast<std::size_t>(t.lhs)].op == Op::Constant);
            if (!constant)
                throw SyntaxError(offsets[k], {"numeric threshold"}, "piecewise thresholds must be numbers");
            const double value = t.op == Op::Constant ? t.value : -ast_.nodes()[static_cast<std::size_t>(t.lhs)].value;
            if (!(value > previous))
                throw SyntaxError(offsets[k], {"increasing threshold"}, "piecewise thresholds must increase");
            previous = value;
        }
        Node n;
        n.op = Op::Piecewise;
        n.var = *var;
        n.args = std::move(operands);
        return ast_.add(std::move(n));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Ast ast_;
};

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
    return v;
}

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

const char* function_name(Op op) {
    switch (op) {
        case Op::Abs: return "abs";
        case Op::Exp: return "exp";
        case Op::Sin: return "sin";
        case Op::Cos: return "cos";
        case Op::Sqrt: return "sqrt";
        case Op::Min: return "min";
        case Op::Max: return "max";
        default: return "";
    }
}

const char* var_name(Op op) {
    switch (op) {
        case Op::VarX: return "x";
        case Op::VarY: return "y";
        default: return "r";
    }
}

}  // namespace

std::int32_t Ast::add(Node node) {
    nodes_.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes_.size() - 1);
}

double Ast::eval(const Variables& v) const {
    if (root_ < 0) throw EvalError("empty expression");
    return eval_node(root_, v);
}

double Ast::eval_node(std::int32_t id, const Variables& v) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    switch (n.op) {
        case Op::Constant: return n.value;
        case Op::VarX: return v.x;
        case Op::VarY: return v.y;
        case Op::VarR: return v.r;
        case Op::Neg: return -eval_node(n.lhs, v);
        case Op::Abs: return std::abs(eval_node(n.lhs, v));
        case Op::Exp: return checked(std::exp(eval_node(n.lhs, v)), "exp");
        case Op::Sin: return checked(std::sin(eval_node(n.lhs, v)), "sin");
        case Op::Cos: return checked(std::cos(eval_node(n.lhs, v)), "cos");
        case Op::Sqrt: {
            const double a = eval_node(n.lhs, v);
            if (a < 0.0) throw EvalError("sqrt of negative value");
            return std::sqrt(a);
        }
        case Op::Add: return checked(eval_node(n.lhs, v) + eval_node(n.rhs, v), "+");
        case Op::Sub: return checked(eval_node(n.lhs, v) - eval_node(n.rhs, v), "-");
        case Op::Mul: return checked(eval_node(n.lhs, v) * eval_node(n.rhs, v), "*");
        case Op::Div: {
            const double a = eval_node(n.lhs, v);
            const double b = eval_node(n.rhs, v);
            if (b == 0.0) throw EvalError("division by zero");
            return checked(a / b, "/");
        }
        case Op::Pow: {
            const double a = eval_node(n.lhs, v);
            const double b = eval_node(n.rhs, v);
            if (a < 0.0 && b != std::floor(b)) throw EvalError("non-integer power of negative value");
            if (a == 0.0 && b < 0.0) throw EvalError("division by zero in power");
            return checked(std::pow(a, b), "^");
        }
        case Op::Min: return std::min(eval_node(n.lhs, v), eval_node(n.rhs, v));
        case Op::Max: return std::max(eval_node(n.lhs, v), eval_node(n.rhs, v));
        case Op::Piecewise: {
            const double s = n.var == Op::VarX ? v.x : n.var == Op::VarY ? v.y : v.r;
            const std::size_t last = n.args.size() - 1;
            for (std::size_t k = 0; k < last; k += 2)
                if (s <= eval_node(n.args[k], v)) return eval_node(n.args[k + 1], v);
            return eval_node(n.args[last], v);
        }
    }
    throw EvalError("corrupt expression node");
}

std::string Ast::print() const {
    std::string out;
    if (root_ >= 0) print_node(root_, out);
    return out;
}

void Ast::print_node(std::int32_t id, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    switch (n.op) {
        case Op::Constant:
            out += '(';
            append_number(out, n.value);
            out += ')';
            return;
        case Op::VarX:
        case Op::VarY:
        case Op::VarR: out += var_name(n.op); return;
        case Op::Neg:
            out += "(-";
            print_node(n.lhs, out);
            out += ')';
            return;
        case Op::Abs:
        case Op::Exp:
        case Op::Sin:
        case Op::Cos:
        case Op::Sqrt:
            out += function_name(n.op);
            out += '(';
            print_node(n.lhs, out);
            out += ')';
            return;
        case Op::Min:
        case Op::Max:
            out += function_name(n.op);
            out += '(';
            print_node(n.lhs, out);
            out += ", ";
            print_node(n.rhs, out);
            out += ')';
            return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow: {
            static constexpr const char* symbols = "+-*/^";
            const auto idx = static_cast<int>(n.op) - static_cast<int>(Op::Add);
            out += '(';
            print_node(n.lhs, out);
            out += ' ';
            out += symbols[idx];
            out += ' ';
            print_node(n.rhs, out);
            out += ')';
            return;
        }
        case Op::Piecewise:
            out += "piecewise(";
            out += var_name(n.var);
            for (auto a : n.args) {
                out += ", ";
                print_node(a, out);
            }
            out += ')';
            return;
    }
}

bool Ast::is_constant() const {
    for (const auto& n : nodes_)
        if (n.op == Op::VarX || n.op == Op::VarY || n.op == Op::VarR || n.op == Op::Piecewise) return false;
    return true;
}

Ast parse(std::string_view source) { return Parser(source).run(); }

double eval(const Ast& ast, const Variables& v) { return ast.eval(v); }

}  // namespace infeig::expr
