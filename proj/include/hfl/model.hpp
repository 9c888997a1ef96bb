#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hfl/expr.hpp"

namespace hfl {

/// One term of a nonlocal boundary sum: coeff * (I^order u)(point).
struct BoundaryTerm {
    double coeff;
    double order;  // > 0
    double point;  // in [a, b]
};

/// User-asserted growth hypothesis:
/// |f(t,x,y)| <= M1 + M2|x| + M3|y|, |g(t,x,y)| <= Mbar1 + Mbar2|x| + Mbar3|y|.
struct GrowthHypothesis {
    double M1, M2, M3;
    double Mbar1, Mbar2, Mbar3;
};

/// User-asserted Lipschitz hypothesis: L1cal/L2cal are the joint Lipschitz
/// constants of f and g in (x, y); L1zero/L2zero are sup |f(t,0,0)| and
/// sup |g(t,0,0)|.
struct LipschitzHypothesis {
    double L1cal, L2cal;
    double L1zero, L2zero;
};

/// Iteration settings (file-level defaults; CLI flags override).
struct SolverSettings {
    double tol = 1e-10;
    std::size_t maxIter = 500;
    double theta = 1.0;  // damping factor in (0, 1], 1 = plain iteration
};

/// Full problem instance:
///   HD^{alpha1,beta1} (HD^{alpha2,beta2} + lambda1) x(t) = f(t, x, y)
///   HD^{p1,q1}       (HD^{p2,q2}       + lambda2) y(t) = g(t, x, y)
/// on [a, b] with x(a) = y(a) = 0 and the coupled integral conditions
///   x(b) = sum_i xTerms[i].coeff * (I^{order} y)(point),
///   y(b) = sum_j yTerms[j].coeff * (I^{order} x)(point).
/// Empty sums mean x(b) = 0 (resp. y(b) = 0).
struct ProblemSpec {
    double a, b;
    double alpha1, beta1, alpha2, beta2;
    double p1, q1, p2, q2;
    double lambda1, lambda2;
    std::vector<BoundaryTerm> xTerms;
    std::vector<BoundaryTerm> yTerms;
    Expr f, g;
    std::size_t N;
    std::optional<GrowthHypothesis> growth;
    std::optional<LipschitzHypothesis> lipschitz;
    SolverSettings solver;
};

/// Effective orders gamma_i = alpha_i + beta_i - alpha_i*beta_i and
/// delta_i = p_i + q_i - p_i*q_i.
struct DerivedOrders {
    double gamma1, gamma2, delta1, delta2;
};

/// Boundary-system constants:
///   phi1 = (b-a)^(gamma1+alpha2-1) / Gamma(gamma1+alpha2)
///   phi2 = sum_i coeff_i (point_i-a)^(delta1+p2+order_i-1) / Gamma(delta1+p2+order_i)
///   phi3 = sum_j coeff_j (point_j-a)^(gamma1+alpha2+order_j-1) / Gamma(gamma1+alpha2+order_j)
///   phi4 = (b-a)^(delta1+p2-1) / Gamma(delta1+p2)
///   Lambda = phi1*phi4 - phi2*phi3
struct StructuralConstants {
    double phi1, phi2, phi3, phi4;
    double Lambda;
};

/// Result of validate(): the complete list of violated constraints (empty
/// when the spec is admissible) plus the derived orders.
struct Validation {
    std::vector<std::string> errors;
    DerivedOrders orders{};

    bool ok() const { return errors.empty(); }
};

/// Checks every structural constraint and returns all violations, not just
/// the first: order ranges, interval orientation, composite-order windows
/// 1 < alpha1+alpha2 <= 2 and 1 < p1+p2 <= 2, boundary-term ranges, grid
/// size, solver settings, and the kernel-continuity conditions
/// gamma1+alpha2 > 1, delta1+p2 > 1.
Validation validate(const ProblemSpec& spec);

/// The gamma/delta arithmetic alone; callers normally reach it via
/// validate().
DerivedOrders derived_orders(const ProblemSpec& spec);

/// Computes phi1..phi4 and Lambda. Throws hfl::domain_error when
/// |Lambda| < 1e-12 * (|phi1*phi4| + |phi2*phi3| + 1) (singular boundary
/// system; the solution representation requires Lambda != 0).
StructuralConstants structural_constants(const ProblemSpec& spec);

}  // namespace hfl
