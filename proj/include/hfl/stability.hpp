#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hfl/certificates.hpp"
#include "hfl/expr.hpp"
#include "hfl/model.hpp"
#include "hfl/solver.hpp"

namespace hfl {

/// One admissible perturbation pair: t-only expressions with
/// sup |h1| <= eps1 and sup |h2| <= eps2 over a 4N-point dense sampling of
/// [a, b] (violations are input errors). trials/seed describe the driver
/// configuration that produced the pair.
struct PerturbationSpec {
    double eps1 = 0.0;
    double eps2 = 0.0;
    Expr h1, h2;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
};

/// Solves the spec with f replaced by f + h1 and g by g + h2 (identical
/// boundary structure, fixed-point iteration as picard_solve, settings taken
/// from spec.solver). Throws hfl::domain_error when h1/h2 depend on x or y
/// or exceed their sup bounds.
SolveResult perturbed_solve(const ProblemSpec& spec,
                            const PerturbationSpec& pert);

struct TrialRow {
    std::size_t trial;
    double d;      // ||xt - x||inf + ||yt - y||inf
    double dx;     // ||xt - x||inf
    double dy;     // ||yt - y||inf
    double ratio;  // d / (lambdaUH * max(eps1, eps2)); 0 when the bound is 0
    bool converged;
    bool pass;
};

struct UhReport {
    double eps1, eps2;
    std::size_t trials;
    std::uint64_t seed;
    UhCheck constants;
    double bound;             // lambdaUH * max(eps1, eps2)
    double boundX, boundY;    // per-component bounds at (eps1, eps2)
    std::vector<TrialRow> rows;
    double maxRatio;
    bool allPass;
};

/// Draws `trials` random degree-<=5 trigonometric perturbation pairs
/// (deterministic given seed; one independent stream per trial), runs
/// perturbed_solve for each, and compares the solution distance against the
/// certified bound. Requires a passing stability certificate
/// (hfl::domain_error otherwise). Solver divergence in a trial is recorded
/// per-trial, not fatal.
UhReport uh_verify(const ProblemSpec& spec, const LipschitzHypothesis& hyp,
                   double eps1, double eps2, std::size_t trials,
                   std::uint64_t seed);

namespace detail {

/// Random trigonometric polynomial sum_{k=0..5} a_k cos(k w t) + b_k sin(k w t),
/// w = 2 pi/(b-a), coefficients U(-1,1) from a SplitMix64 stream, rescaled so
/// its sup over the 4N+1-point dense grid is 0.999999 * eps (the zero
/// function when eps = 0). Deterministic given the stream seed.
Expr randomTrigPoly(double a, double b, std::size_t n, double eps,
                    std::uint64_t streamSeed);

/// Stream seed for one trial: SplitMix64 applied to seed XOR the
/// golden-ratio scramble of the trial index.
std::uint64_t trialStream(std::uint64_t seed, std::size_t trial);

}  // namespace detail

}  // namespace hfl
