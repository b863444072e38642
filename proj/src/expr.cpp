#include "normspec/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "normspec/errors.hpp"

namespace normspec {

using Op = ScalarExpr::Op;
using NodePtr = std::shared_ptr<const ScalarExpr::Node>;

ScalarExpr ScalarExpr::number(double v) {
    return ScalarExpr(std::make_shared<const Node>(Node{Op::Number, v, nullptr, nullptr}));
}

ScalarExpr ScalarExpr::variable(Op var) {
    return ScalarExpr(std::make_shared<const Node>(Node{var, 0.0, nullptr, nullptr}));
}

ScalarExpr ScalarExpr::unary(Op op, const ScalarExpr& a) {
    return ScalarExpr(std::make_shared<const Node>(Node{op, 0.0, a.root_, nullptr}));
}

ScalarExpr ScalarExpr::binary(Op op, const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(std::make_shared<const Node>(Node{op, 0.0, a.root_, b.root_}));
}

namespace {

bool is_integer(Complex w) { return w.imag() == 0.0 && w.real() == std::round(w.real()) && std::abs(w.real()) < 1e9; }

Complex int_power(Complex z, long long k) {
    if (k < 0) {
        if (z == Complex{}) throw EvalError("division by zero in negative power");
        return Complex{1.0} / int_power(z, -k);
    }
    Complex r{1.0};
    while (k) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

Complex power(Complex z, Complex w) {
    if (is_integer(w)) return int_power(z, static_cast<long long>(w.real()));
    if (z == Complex{}) {
        if (w.real() > 0.0) return {};
        throw EvalError("zero raised to a non-positive power");
    }
    if (z.imag() == 0.0 && z.real() > 0.0 && w.imag() == 0.0) return std::pow(z.real(), w.real());
    return std::pow(z, w);
}

Complex eval_node(const ScalarExpr::Node* n, const ExprVars& v) {
    switch (n->op) {
    case Op::Number: return n->value;
    case Op::VarT: return v.t;
    case Op::VarX: return v.x;
    case Op::VarY: return v.y;
    case Op::ImagUnit: return {0.0, 1.0};
    case Op::Neg: return -eval_node(n->lhs.get(), v);
    case Op::Abs: return std::abs(eval_node(n->lhs.get(), v));
    case Op::Sin: return std::sin(eval_node(n->lhs.get(), v));
    case Op::Cos: return std::cos(eval_node(n->lhs.get(), v));
    case Op::Exp: return std::exp(eval_node(n->lhs.get(), v));
    case Op::Sqrt: {
        Complex a = eval_node(n->lhs.get(), v);
        if (a.imag() == 0.0 && a.real() >= 0.0) return std::sqrt(a.real());
        return std::sqrt(a);
    }
    default: break;
    }
    Complex a = eval_node(n->lhs.get(), v);
    Complex b = eval_node(n->rhs.get(), v);
    switch (n->op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div:
        if (b == Complex{}) throw EvalError("division by zero");
        return a / b;
    case Op::Pow: return power(a, b);
    default: throw EvalError("corrupt expression node");
    }
}

const char* func_name(Op op) {
    switch (op) {
    case Op::Abs: return "abs";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sqrt: return "sqrt";
    case Op::Exp: return "exp";
    default: return nullptr;
    }
}

char bin_symbol(Op op) {
    switch (op) {
    case Op::Add: return '+';
    case Op::Sub: return '-';
    case Op::Mul: return '*';
    case Op::Div: return '/';
    case Op::Pow: return '^';
    default: return 0;
    }
}

void print_node(const ScalarExpr::Node* n, std::string& out) {
    switch (n->op) {
    case Op::Number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n->value);
        out += buf;
        return;
    }
    case Op::VarT: out += 't'; return;
    case Op::VarX: out += 'x'; return;
    case Op::VarY: out += 'y'; return;
    case Op::ImagUnit: out += 'i'; return;
    case Op::Neg:
        out += "(-";
        print_node(n->lhs.get(), out);
        out += ')';
        return;
    default: break;
    }
    if (const char* f = func_name(n->op)) {
        out += f;
        out += '(';
        print_node(n->lhs.get(), out);
        out += ')';
        return;
    }
    out += '(';
    print_node(n->lhs.get(), out);
    out += bin_symbol(n->op);
    print_node(n->rhs.get(), out);
    out += ')';
}

bool uses_node(const ScalarExpr::Node* n, Op var) {
    if (!n) return false;
    return n->op == var || uses_node(n->lhs.get(), var) || uses_node(n->rhs.get(), var);
}

class Parser {
public:
    explicit Parser(std::string_view src) : s_(src) {}

    ScalarExpr parse() {
        ScalarExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("'+', '-', '*', '/', '^', end of input");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = pos_ < s_.size() ? std::string("'") + s_[pos_] + "'" : "end of input";
        throw SyntaxError(pos_, expected,
                          "syntax error at offset " + std::to_string(pos_) + ": found " + found + ", expected " + expected);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ScalarExpr expr() {
        ScalarExpr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = ScalarExpr::binary(Op::Add, lhs, term());
            else if (accept('-'))
                lhs = ScalarExpr::binary(Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    ScalarExpr term() {
        ScalarExpr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = ScalarExpr::binary(Op::Mul, lhs, unary());
            else if (accept('/'))
                lhs = ScalarExpr::binary(Op::Div, lhs, unary());
            else
                return lhs;
        }
    }

    ScalarExpr unary() {
        if (accept('-')) return ScalarExpr::unary(Op::Neg, unary());
        return power();
    }

    ScalarExpr exponent() {
        if (accept('-')) return ScalarExpr::unary(Op::Neg, exponent());
        return power();
    }

    ScalarExpr power() {
        ScalarExpr base = primary();
        if (accept('^')) return ScalarExpr::binary(Op::Pow, base, exponent());
        return base;
    }

    ScalarExpr primary() {
        static const char* kExpected = "number, 't', 'x', 'y', 'i', function name, '('";
        skip_ws();
        if (pos_ >= s_.size()) fail(kExpected);
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            ScalarExpr e = expr();
            if (!accept(')')) fail("')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string_view word = s_.substr(start, pos_ - start);
            if (word == "t") return ScalarExpr::variable(Op::VarT);
            if (word == "x") return ScalarExpr::variable(Op::VarX);
            if (word == "y") return ScalarExpr::variable(Op::VarY);
            if (word == "i") return ScalarExpr::variable(Op::ImagUnit);
            Op f;
            if (word == "abs") f = Op::Abs;
            else if (word == "sin") f = Op::Sin;
            else if (word == "cos") f = Op::Cos;
            else if (word == "sqrt") f = Op::Sqrt;
            else if (word == "exp") f = Op::Exp;
            else {
                pos_ = start;
                fail(kExpected);
            }
            if (!accept('(')) fail("'('");
            ScalarExpr arg = expr();
            if (!accept(')')) fail("')'");
            return ScalarExpr::unary(f, arg);
        }
        fail(kExpected);
    }

    ScalarExpr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t nd = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            nd += digits();
        }
        if (nd == 0) {
            pos_ = start;
            fail("digit");
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                if (pos_ > mark + 1 && (s_[pos_ - 1] == '+' || s_[pos_ - 1] == '-')) fail("digit");
                pos_ = mark;
            }
        }
        const std::string text(s_.substr(start, pos_ - start));
        return ScalarExpr::number(std::strtod(text.c_str(), nullptr));
    }
};

}  // namespace

Complex ScalarExpr::eval(const ExprVars& v) const {
    if (!root_) throw EvalError("empty expression");
    Complex r = eval_node(root_.get(), v);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) throw EvalError("non-finite value");
    return r;
}

std::string ScalarExpr::print() const {
    std::string out;
    if (root_) print_node(root_.get(), out);
    return out;
}

bool ScalarExpr::uses(Op var) const { return uses_node(root_.get(), var); }

ScalarExpr parse_expr(std::string_view src) { return Parser(src).parse(); }

}  // namespace normspec
