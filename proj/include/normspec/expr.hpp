#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "normspec/series.hpp"

namespace normspec {

/// Values of the real parameters an expression may reference.
struct ExprVars {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/// Immutable scalar expression tree.
///
/// Grammar (lowest to highest precedence):
///   expr    = term { ("+" | "-") term }
///   term    = unary { ("*" | "/") unary }
///   unary   = "-" unary | power
///   power   = primary [ "^" exponent ]
///   exponent= "-" exponent | power
///   primary = number | "t" | "x" | "y" | "i" | func "(" expr ")" | "(" expr ")"
///   func    = "abs" | "sin" | "cos" | "sqrt" | "exp"
class ScalarExpr {
public:
    enum class Op { Number, VarT, VarX, VarY, ImagUnit, Add, Sub, Mul, Div, Pow, Neg, Abs, Sin, Cos, Sqrt, Exp };

    struct Node {
        Op op;
        double value = 0.0;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    ScalarExpr() = default;
    explicit ScalarExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    static ScalarExpr number(double v);
    static ScalarExpr variable(Op var);
    static ScalarExpr unary(Op op, const ScalarExpr& a);
    static ScalarExpr binary(Op op, const ScalarExpr& a, const ScalarExpr& b);

    bool empty() const noexcept { return !root_; }
    const Node* root() const noexcept { return root_.get(); }

    /// Throws EvalError on division by zero or a non-finite result.
    Complex eval(const ExprVars& v) const;
    /// Fully parenthesized canonical form; numbers use 17 significant digits.
    std::string print() const;
    /// True if the tree references the given variable.
    bool uses(Op var) const;

private:
    std::shared_ptr<const Node> root_;
};

/// Parses src; throws SyntaxError with the byte offset and expected tokens.
ScalarExpr parse_expr(std::string_view src);

}  // namespace normspec
