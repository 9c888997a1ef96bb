#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace hfl {

namespace detail {
struct ExprNode;
}

/// Immutable parsed expression in the variables t, x, y.
///
/// Grammar (standard precedence, left-associative):
///   expr    := term (('+' | '-') term)*
///   term    := factor (('*' | '/') factor)*
///   factor  := '-' factor | primary
///   primary := number | 't' | 'x' | 'y' | name '(' expr ')' | '(' expr ')'
/// with name one of sin, cos, exp, abs, sqrt. Whitespace-insensitive.
class Expr {
public:
    /// Literal 0. Exists so Expr can sit in aggregates; parse() is the
    /// intended constructor.
    Expr();

    /// Parses source text. Throws hfl::parse_error with a byte offset and
    /// an expected-token message on malformed input, including unknown
    /// identifiers.
    static Expr parse(std::string_view source);

    /// Evaluates at (t, x, y). Throws hfl::eval_error carrying the byte
    /// offset of the failing node on division by zero, sqrt of a negative,
    /// or any non-finite intermediate result.
    double eval(double t, double x, double y) const;

    /// Canonical text form with minimal parentheses;
    /// parse(print()) reproduces the same tree.
    std::string print() const;

    /// True when any x or y variable appears in the tree.
    bool dependsOnXY() const;

    /// Structural sum a + b sharing both subtrees (no re-parse).
    static Expr sum(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const detail::ExprNode> root);
    std::shared_ptr<const detail::ExprNode> root_;
};

/// Sampling region for lipschitz_probe.
struct ProbeBox {
    double tMin, tMax;
    double xMin, xMax;
    double yMin, yMax;
};

/// Empirical LOWER estimate of the joint Lipschitz constant
/// sup |e(t,x2,y2) - e(t,x1,y1)| / (|x2-x1| + |y2-y1|), sampled over a
/// uniform lattice (axis-neighbor pairs plus short-range pairs) at nine t
/// slices. Never exceeds the true constant up to rounding; certificates
/// that use it must be labeled empirical. Requires samples >= 100.
double lipschitz_probe(const Expr& e, const ProbeBox& box, std::size_t samples);

}  // namespace hfl
