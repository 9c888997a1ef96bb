#pragma once

#include <optional>
#include <string>

#include "hfl/model.hpp"

namespace hfl {

/// The eight operator-norm building blocks. X/Y carry the lambda terms,
/// F/G the nonlinearity terms; subscript 1 bounds the first component map,
/// subscript 2 the second.
struct GrowthBounds {
    double X1, Y1, F1, G1;
    double X2, Y2, F2, G2;
};

enum class Verdict { pass, fail };

/// Existence check (Leray-Schauder style a priori bound).
struct ExistenceCheck {
    double K1, K2;
    std::optional<double> lsBound;  // set only when the verdict passes
    Verdict verdict;
    std::string reason;
};

/// Uniqueness check (Banach contraction).
struct UniquenessCheck {
    double kappa;
    std::optional<double> radius;  // set only when the verdict passes
    Verdict verdict;
    std::string reason;
};

/// Ulam-Hyers stability constants and verdict.
struct UhCheck {
    double A1, B1, C1;
    double A2, B2, C2;
    double Delta;
    std::optional<double> lambdaUH;  // set only when the verdict passes
    Verdict verdict;
    std::string reason;
};

/// Everything certify computes. Hypothesis-dependent sections are absent
/// when the spec carries no corresponding hypothesis block.
struct Certificate {
    DerivedOrders orders;
    StructuralConstants structural;
    GrowthBounds growth;
    std::optional<ExistenceCheck> existence;
    std::optional<UniquenessCheck> uniqueness;
    std::optional<UhCheck> ulamHyers;
};

/// Evaluates the eight closed-form bounds from the structural constants.
GrowthBounds growth_bounds(const ProblemSpec& spec);

/// K1, K2 and the a priori solution bound
/// lsBound = ((F1+F2)M1 + (G1+G2)Mbar1) / min(1-K1, 1-K2).
/// Verdict passes iff K1 < 1 and K2 < 1.
ExistenceCheck leray_schauder_check(const ProblemSpec& spec,
                                    const GrowthHypothesis& hyp);

/// kappa = (F1+F2)L1cal + (G1+G2)L2cal + (X1+X2) + (Y1+Y2) and the
/// invariant-ball radius ((F1+F2)L1zero + (G1+G2)L2zero)/(1-kappa).
/// Verdict passes iff kappa < 1.
UniquenessCheck banach_check(const ProblemSpec& spec,
                             const LipschitzHypothesis& hyp);

/// A/B/C constants, Delta = 1 - B1*B2/((1-A1)(1-A2)), and the stability
/// factor lambdaUH. Verdict passes iff A1 < 1, A2 < 1 and |Delta| > 1e-12.
/// A1 or A2 equal to 1 exactly is a degenerate-constant error
/// (hfl::domain_error). Note: the stability criterion is sometimes printed
/// with the reversed inequalities A1 > 1, A2 > 1, which contradict the
/// derivation of the bound; this implementation requires A1 < 1, A2 < 1.
UhCheck uh_constants(const ProblemSpec& spec, const LipschitzHypothesis& hyp);

/// Runs every check whose hypothesis block is present.
Certificate certify(const ProblemSpec& spec);

}  // namespace hfl
