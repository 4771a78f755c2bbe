#include "haar/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace haar {
namespace detail {

enum class Op { Number, Var, Param, Add, Sub, Mul, Div, Pow, Neg, Call };

enum class Fn { Exp, Ln, Tan, Atan, Sin, Cos, Sqrt, Abs };

struct FnEntry {
    const char* name;
    Fn fn;
};

constexpr std::array<FnEntry, 8> kFunctions = {{
    {"exp", Fn::Exp},
    {"ln", Fn::Ln},
    {"tan", Fn::Tan},
    {"atan", Fn::Atan},
    {"sin", Fn::Sin},
    {"cos", Fn::Cos},
    {"sqrt", Fn::Sqrt},
    {"abs", Fn::Abs},
}};

struct Node {
    Op op;
    double value = 0.0;                   // Number
    std::string name;                     // Param
    Fn fn = Fn::Exp;                      // Call
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;      // binary ops only
};

using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Number;
    n->value = v;
    return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("empty expression", 0);
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(Op::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = make_binary(Op::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(Op::Mul, lhs, parse_factor());
            else if (accept('/'))
                lhs = make_binary(Op::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    // factor := "-" factor | power; power := atom ("^" factor)?
    // Unary minus binds weaker than ^, so -x^2 = -(x^2).
    NodePtr parse_factor() {
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->op = Op::Neg;
            n->lhs = parse_factor();
            return n;
        }
        NodePtr base = parse_atom();
        if (accept('^'))
            return make_binary(Op::Pow, base, parse_factor());
        return base;
    }

    NodePtr parse_atom() {
        if (at_end())
            throw ParseError("unexpected end of input", pos_);
        const char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_ident();
        throw ParseError("unexpected character", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t expo = pos_ + 1;
            if (expo < text_.size() && (text_[expo] == '+' || text_[expo] == '-'))
                ++expo;
            if (expo < text_.size() && std::isdigit(static_cast<unsigned char>(text_[expo]))) {
                pos_ = expo;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        const std::string token(text_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size())
            throw ParseError("malformed number '" + token + "'", start);
        return make_number(v);
    }

    NodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (peek() == '(') {
            ++pos_;
            NodePtr arg = parse_expr();
            expect(')');
            for (const auto& entry : kFunctions) {
                if (name == entry.name) {
                    auto n = std::make_shared<Node>();
                    n->op = Op::Call;
                    n->fn = entry.fn;
                    n->lhs = std::move(arg);
                    return n;
                }
            }
            throw ParseError("unknown function '" + name + "'", start);
        }
        auto n = std::make_shared<Node>();
        if (name == "x") {
            n->op = Op::Var;
        } else {
            n->op = Op::Param;
            n->name = name;
        }
        return n;
    }
};

void check_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw DomainError(std::string(what) + " produced a non-finite value");
}

template <class T>
T eval_node(const Node& n, T x, const Params& params);

template <class T>
T apply_fn(Fn fn, T a) {
    using std::abs;
    using std::atan;
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    using std::tan;
    switch (fn) {
        case Fn::Exp:
            return exp(a);
        case Fn::Ln:
            return log(a);
        case Fn::Tan:
            return tan(a);
        case Fn::Atan:
            return atan(a);
        case Fn::Sin:
            return sin(a);
        case Fn::Cos:
            return cos(a);
        case Fn::Sqrt:
            return sqrt(a);
        case Fn::Abs:
            return abs(a);
    }
    throw std::logic_error("unreachable function kind");
}

inline double value_of(double v) { return v; }
inline double value_of(Dual v) { return v.v; }

template <class T>
T eval_node(const Node& n, T x, const Params& params) {
    using std::pow;
    switch (n.op) {
        case Op::Number:
            return T(n.value);
        case Op::Var:
            return x;
        case Op::Param: {
            auto it = params.find(n.name);
            if (it == params.end())
                throw UnboundParameterError(n.name);
            return T(it->second);
        }
        case Op::Add:
            return eval_node(*n.lhs, x, params) + eval_node(*n.rhs, x, params);
        case Op::Sub:
            return eval_node(*n.lhs, x, params) - eval_node(*n.rhs, x, params);
        case Op::Mul:
            return eval_node(*n.lhs, x, params) * eval_node(*n.rhs, x, params);
        case Op::Div: {
            T num = eval_node(*n.lhs, x, params);
            T den = eval_node(*n.rhs, x, params);
            if (value_of(den) == 0.0)
                throw DomainError("division by zero");
            return num / den;
        }
        case Op::Pow: {
            T base = eval_node(*n.lhs, x, params);
            T expo = eval_node(*n.rhs, x, params);
            T r = pow(base, expo);
            check_finite(value_of(r), "pow");
            return r;
        }
        case Op::Neg:
            return -eval_node(*n.lhs, x, params);
        case Op::Call: {
            T a = eval_node(*n.lhs, x, params);
            switch (n.fn) {
                case Fn::Ln:
                    if (value_of(a) <= 0.0)
                        throw DomainError("ln of a non-positive number");
                    break;
                case Fn::Sqrt:
                    if (value_of(a) < 0.0)
                        throw DomainError("sqrt of a negative number");
                    break;
                case Fn::Tan: {
                    T r = apply_fn(n.fn, a);
                    check_finite(value_of(r), "tan");
                    return r;
                }
                default:
                    break;
            }
            T r = apply_fn(n.fn, a);
            check_finite(value_of(r), "function application");
            return r;
        }
    }
    throw std::logic_error("unreachable node kind");
}

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub:
            return 1;
        case Op::Mul:
        case Op::Div:
            return 2;
        case Op::Neg:
            return 3;
        case Op::Pow:
            return 4;
        default:
            return 5;
    }
}

void print_node(std::ostream& os, const Node& n, int parent_prec) {
    const int prec = precedence(n.op);
    const bool parens = prec < parent_prec;
    if (parens)
        os << '(';
    switch (n.op) {
        case Op::Number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.value;
            std::string s = tmp.str();
            if (n.value < 0) {
                // A negative literal prints as unary minus so the text reparses.
                os << "(" << s << ")";
            } else {
                os << s;
            }
            break;
        }
        case Op::Var:
            os << 'x';
            break;
        case Op::Param:
            os << n.name;
            break;
        case Op::Add:
            print_node(os, *n.lhs, prec);
            os << " + ";
            print_node(os, *n.rhs, prec + 1);
            break;
        case Op::Sub:
            print_node(os, *n.lhs, prec);
            os << " - ";
            print_node(os, *n.rhs, prec + 1);
            break;
        case Op::Mul:
            print_node(os, *n.lhs, prec);
            os << "*";
            print_node(os, *n.rhs, prec + 1);
            break;
        case Op::Div:
            print_node(os, *n.lhs, prec);
            os << "/";
            print_node(os, *n.rhs, prec + 1);
            break;
        case Op::Pow:
            // Right-associative: parenthesize a left child of equal precedence.
            print_node(os, *n.lhs, prec + 1);
            os << "^";
            print_node(os, *n.rhs, prec);
            break;
        case Op::Neg:
            os << "-";
            print_node(os, *n.lhs, prec + 1);
            break;
        case Op::Call:
            for (const auto& entry : kFunctions) {
                if (entry.fn == n.fn) {
                    os << entry.name;
                    break;
                }
            }
            os << '(';
            print_node(os, *n.lhs, 0);
            os << ')';
            break;
    }
    if (parens)
        os << ')';
}

bool same_node(const Node& a, const Node& b) {
    if (a.op != b.op)
        return false;
    switch (a.op) {
        case Op::Number:
            return a.value == b.value;
        case Op::Var:
            return true;
        case Op::Param:
            return a.name == b.name;
        case Op::Call:
            return a.fn == b.fn && same_node(*a.lhs, *b.lhs);
        case Op::Neg:
            return same_node(*a.lhs, *b.lhs);
        default:
            return same_node(*a.lhs, *b.lhs) && same_node(*a.rhs, *b.rhs);
    }
}

}  // namespace
}  // namespace detail

Expr Expr::parse(std::string_view text) {
    detail::Parser p(text);
    return Expr(p.run());
}

double Expr::eval(double x, const Params& params) const {
    if (!root_)
        throw DomainError("evaluating an empty expression");
    const double v = detail::eval_node<double>(*root_, x, params);
    detail::check_finite(v, "expression");
    return v;
}

double Expr::derivative_at(double x, const Params& params) const {
    if (!root_)
        throw DomainError("differentiating an empty expression");
    const Dual r = detail::eval_node<Dual>(*root_, Dual{x, 1.0}, params);
    if (!std::isfinite(r.v) || !std::isfinite(r.d))
        throw DomainError("derivative is not finite at this point");
    return r.d;
}

std::string Expr::str() const {
    if (!root_)
        return "";
    std::ostringstream os;
    detail::print_node(os, *root_, 0);
    return os.str();
}

bool Expr::same_structure(const Expr& other) const {
    if (!root_ || !other.root_)
        return root_ == other.root_;
    return detail::same_node(*root_, *other.root_);
}

}  // namespace haar
