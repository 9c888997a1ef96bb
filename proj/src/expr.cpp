#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hfl/errors.hpp"
#include "hfl/expr.hpp"

namespace hfl {

namespace detail {

enum class Kind { number, variable, negate, add, sub, mul, div, call };

enum class Func { sin, cos, exp, abs, sqrt };

struct ExprNode {
    Kind kind;
    std::size_t pos = 0;  // byte offset in the original source
    double number = 0.0;
    char var = 't';
    Func func = Func::sin;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

constexpr std::array<std::string_view, 5> kFuncNames = {"sin", "cos", "exp", "abs", "sqrt"};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parseAll() {
        NodePtr e = parseExpr();
        skipSpace();
        if (pos_ != src_.size()) {
            fail("unexpected trailing input", pos_);
        }
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what, std::size_t at) {
        throw parse_error("expression: " + what + " at offset " + std::to_string(at), at);
    }

    void skipSpace() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skipSpace();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parseExpr() {
        NodePtr lhs = parseTerm();
        for (;;) {
            skipSpace();
            const std::size_t at = pos_;
            if (eat('+')) {
                lhs = binary(Kind::add, at, lhs, parseTerm());
            } else if (eat('-')) {
                lhs = binary(Kind::sub, at, lhs, parseTerm());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parseTerm() {
        NodePtr lhs = parseFactor();
        for (;;) {
            skipSpace();
            const std::size_t at = pos_;
            if (eat('*')) {
                lhs = binary(Kind::mul, at, lhs, parseFactor());
            } else if (eat('/')) {
                lhs = binary(Kind::div, at, lhs, parseFactor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parseFactor() {
        skipSpace();
        const std::size_t at = pos_;
        if (eat('-')) {
            auto node = std::make_shared<ExprNode>();
            node->kind = Kind::negate;
            node->pos = at;
            node->lhs = parseFactor();
            return node;
        }
        return parsePrimary();
    }

    NodePtr parsePrimary() {
        skipSpace();
        if (pos_ >= src_.size()) {
            fail("expected a number, variable, function, or '('", pos_);
        }
        const std::size_t at = pos_;
        const char c = src_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr inner = parseExpr();
            if (!eat(')')) fail("expected ')'", pos_);
            return inner;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parseNumber();
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
                ++end;
            }
            const std::string_view name = src_.substr(pos_, end - pos_);
            pos_ = end;

            if (name == "t" || name == "x" || name == "y") {
                auto node = std::make_shared<ExprNode>();
                node->kind = Kind::variable;
                node->pos = at;
                node->var = name[0];
                return node;
            }
            for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
                if (name == kFuncNames[i]) {
                    if (!eat('(')) fail("expected '(' after function name", pos_);
                    auto node = std::make_shared<ExprNode>();
                    node->kind = Kind::call;
                    node->pos = at;
                    node->func = static_cast<Func>(i);
                    node->lhs = parseExpr();
                    if (!eat(')')) fail("expected ')'", pos_);
                    return node;
                }
            }
            fail("unknown identifier '" + std::string(name) + "'", at);
        }

        fail(std::string("unexpected character '") + c + "'", at);
    }

    NodePtr parseNumber() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.')) {
            ++end;
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t expEnd = end + 1;
            if (expEnd < src_.size() && (src_[expEnd] == '+' || src_[expEnd] == '-')) {
                ++expEnd;
            }
            if (expEnd < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[expEnd]))) {
                end = expEnd;
                while (end < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[end]))) {
                    ++end;
                }
            }
        }
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(src_.data() + at, src_.data() + end, value);
        if (ec != std::errc() || ptr != src_.data() + end) {
            fail("malformed number", at);
        }
        pos_ = end;
        auto node = std::make_shared<ExprNode>();
        node->kind = Kind::number;
        node->pos = at;
        node->number = value;
        return node;
    }

    static NodePtr binary(Kind kind, std::size_t at, NodePtr lhs, NodePtr rhs) {
        auto node = std::make_shared<ExprNode>();
        node->kind = kind;
        node->pos = at;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }
};

double evalNode(const ExprNode& n, double t, double x, double y) {
    double v = 0.0;
    switch (n.kind) {
        case Kind::number:
            v = n.number;
            break;
        case Kind::variable:
            v = (n.var == 't') ? t : (n.var == 'x') ? x : y;
            break;
        case Kind::negate:
            v = -evalNode(*n.lhs, t, x, y);
            break;
        case Kind::add:
            v = evalNode(*n.lhs, t, x, y) + evalNode(*n.rhs, t, x, y);
            break;
        case Kind::sub:
            v = evalNode(*n.lhs, t, x, y) - evalNode(*n.rhs, t, x, y);
            break;
        case Kind::mul:
            v = evalNode(*n.lhs, t, x, y) * evalNode(*n.rhs, t, x, y);
            break;
        case Kind::div: {
            const double denom = evalNode(*n.rhs, t, x, y);
            if (denom == 0.0) {
                throw eval_error("expression: division by zero at offset " +
                                     std::to_string(n.pos),
                                 n.pos);
            }
            v = evalNode(*n.lhs, t, x, y) / denom;
            break;
        }
        case Kind::call: {
            const double arg = evalNode(*n.lhs, t, x, y);
            switch (n.func) {
                case Func::sin: v = std::sin(arg); break;
                case Func::cos: v = std::cos(arg); break;
                case Func::exp: v = std::exp(arg); break;
                case Func::abs: v = std::abs(arg); break;
                case Func::sqrt:
                    if (arg < 0.0) {
                        throw eval_error(
                            "expression: sqrt of a negative value at offset " +
                                std::to_string(n.pos),
                            n.pos);
                    }
                    v = std::sqrt(arg);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(v)) {
        throw eval_error("expression: non-finite result at offset " +
                             std::to_string(n.pos),
                         n.pos);
    }
    return v;
}

// Precedence for the canonical printer: additive 1, multiplicative 2,
// everything tighter 3.
int precedence(Kind k) {
    switch (k) {
        case Kind::add:
        case Kind::sub: return 1;
        case Kind::mul:
        case Kind::div: return 2;
        default: return 3;
    }
}

std::string printNumber(double v) {
    // Shortest text that parses back to the same double, so printed trees
    // reparse to bitwise-identical literals.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void printNode(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case Kind::number:
            out += printNumber(n.number);
            return;
        case Kind::variable:
            out += n.var;
            return;
        case Kind::negate:
            out += '-';
            if (precedence(n.lhs->kind) < 3) {
                out += '(';
                printNode(*n.lhs, out);
                out += ')';
            } else {
                printNode(*n.lhs, out);
            }
            return;
        case Kind::call:
            out += kFuncNames[static_cast<std::size_t>(n.func)];
            out += '(';
            printNode(*n.lhs, out);
            out += ')';
            return;
        default:
            break;
    }
    const int prec = precedence(n.kind);
    const bool parenLeft = precedence(n.lhs->kind) < prec;
    // Right operand of - and / needs parentheses at equal precedence too
    // (left associativity).
    const bool strictRight = (n.kind == Kind::sub || n.kind == Kind::div);
    const bool parenRight = precedence(n.rhs->kind) < prec ||
                            (strictRight && precedence(n.rhs->kind) == prec);
    if (parenLeft) out += '(';
    printNode(*n.lhs, out);
    if (parenLeft) out += ')';
    out += (n.kind == Kind::add) ? " + "
         : (n.kind == Kind::sub) ? " - "
         : (n.kind == Kind::mul) ? "*"
                                 : "/";
    if (parenRight) out += '(';
    printNode(*n.rhs, out);
    if (parenRight) out += ')';
}

bool nodeDependsOnXY(const ExprNode& n) {
    switch (n.kind) {
        case Kind::number: return false;
        case Kind::variable: return n.var == 'x' || n.var == 'y';
        case Kind::negate:
        case Kind::call: return nodeDependsOnXY(*n.lhs);
        default: return nodeDependsOnXY(*n.lhs) || nodeDependsOnXY(*n.rhs);
    }
}

}  // namespace

}  // namespace detail

Expr::Expr() {
    auto zero = std::make_shared<detail::ExprNode>();
    zero->kind = detail::Kind::number;
    zero->number = 0.0;
    root_ = std::move(zero);
}

Expr::Expr(std::shared_ptr<const detail::ExprNode> root) : root_(std::move(root)) {}

Expr Expr::parse(std::string_view source) {
    return Expr(detail::Parser(source).parseAll());
}

double Expr::eval(double t, double x, double y) const {
    return detail::evalNode(*root_, t, x, y);
}

std::string Expr::print() const {
    std::string out;
    detail::printNode(*root_, out);
    return out;
}

bool Expr::dependsOnXY() const { return detail::nodeDependsOnXY(*root_); }

Expr Expr::sum(const Expr& a, const Expr& b) {
    auto node = std::make_shared<detail::ExprNode>();
    node->kind = detail::Kind::add;
    node->lhs = a.root_;
    node->rhs = b.root_;
    return Expr(std::move(node));
}

double lipschitz_probe(const Expr& e, const ProbeBox& box, std::size_t samples) {
    if (samples < 100) {
        throw domain_error("lipschitz_probe: requires samples >= 100");
    }
    for (double v : {box.tMin, box.tMax, box.xMin, box.xMax, box.yMin, box.yMax}) {
        if (!std::isfinite(v)) {
            throw domain_error("lipschitz_probe: box must be finite");
        }
    }
    const auto g = static_cast<std::size_t>(
        std::max(2.0, std::floor(std::sqrt(static_cast<double>(samples)))));
    const double dx = (box.xMax - box.xMin) / static_cast<double>(g - 1);
    const double dy = (box.yMax - box.yMin) / static_cast<double>(g - 1);
    // Short-range companion offsets probe local slope where the lattice
    // spacing is too coarse for high-curvature expressions.
    const double ex = (box.xMax - box.xMin) * 1e-4;
    const double ey = (box.yMax - box.yMin) * 1e-4;

    double best = 0.0;
    const auto consider = [&](double num, double den) {
        if (den > 0.0) best = std::max(best, num / den);
    };

    constexpr std::size_t kTSlices = 9;
    std::vector<double> slice(g * g);
    for (std::size_t it = 0; it < kTSlices; ++it) {
        const double t =
            box.tMin + static_cast<double>(it) * (box.tMax - box.tMin) /
                           static_cast<double>(kTSlices - 1);
        for (std::size_t i = 0; i < g; ++i) {
            const double x = box.xMin + static_cast<double>(i) * dx;
            for (std::size_t j = 0; j < g; ++j) {
                const double y = box.yMin + static_cast<double>(j) * dy;
                slice[i * g + j] = e.eval(t, x, y);
            }
        }
        for (std::size_t i = 0; i < g; ++i) {
            const double x = box.xMin + static_cast<double>(i) * dx;
            for (std::size_t j = 0; j < g; ++j) {
                const double y = box.yMin + static_cast<double>(j) * dy;
                const double v = slice[i * g + j];
                if (i + 1 < g) consider(std::abs(slice[(i + 1) * g + j] - v), dx);
                if (j + 1 < g) consider(std::abs(slice[i * g + j + 1] - v), dy);
                if (ex > 0.0 && x + ex <= box.xMax) {
                    consider(std::abs(e.eval(t, x + ex, y) - v), ex);
                }
                if (ey > 0.0 && y + ey <= box.yMax) {
                    consider(std::abs(e.eval(t, x, y + ey) - v), ey);
                }
            }
        }
    }
    return best;
}

}  // namespace hfl
