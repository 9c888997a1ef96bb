#include "hfl/stability.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hfl/errors.hpp"

namespace hfl {
namespace {

// SplitMix64; one stream per uint64 seed, consumed in a fixed draw order.
std::uint64_t nextU64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform draw on [-1, 1) from the top 53 bits.
double uniform11(std::uint64_t& state) {
    const double u01 = static_cast<double>(nextU64(state) >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
}

// Shortest round-trip decimal form; parsing it back recovers the same bits.
std::string fmtDouble(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void requireValidated(const ProblemSpec& spec, const char* op) {
    const Validation v = validate(spec);
    if (v.ok()) return;
    std::vector<std::string> issues;
    issues.reserve(v.errors.size());
    for (const std::string& e : v.errors) issues.push_back(std::string(op) + ": " + e);
    throw validation_error(issues);
}

// Dense validation grid shared by the generator and perturbed_solve: 4N+1
// equispaced points on [a, b].
double denseSup(const Expr& h, double a, double b, std::size_t n) {
    const std::size_t m = 4 * n;
    double sup = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        const double t = a + static_cast<double>(i) * (b - a) / static_cast<double>(m);
        sup = std::max(sup, std::abs(h.eval(t, 0.0, 0.0)));
    }
    return sup;
}

}  // namespace

namespace detail {

std::uint64_t trialStream(std::uint64_t seed, std::size_t trial) {
    std::uint64_t s =
        seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1));
    return nextU64(s);
}

Expr randomTrigPoly(double a, double b, std::size_t n, double eps,
                    std::uint64_t streamSeed) {
    // Fixed draw order (a_k then b_k for k = 0..5) keeps streams stable even
    // for coefficients that end up unused.
    std::uint64_t state = streamSeed;
    std::array<double, 6> ca{}, cb{};
    for (int k = 0; k < 6; ++k) {
        ca[static_cast<std::size_t>(k)] = uniform11(state);
        cb[static_cast<std::size_t>(k)] = uniform11(state);
    }
    if (eps == 0.0) return Expr::parse("0");

    const double w = 2.0 * std::numbers::pi / (b - a);
    const std::size_t m = 4 * n;
    double sup = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        const double t = a + static_cast<double>(i) * (b - a) / static_cast<double>(m);
        double v = ca[0];
        for (int k = 1; k < 6; ++k) {
            const double kw = static_cast<double>(k) * w;
            v += ca[static_cast<std::size_t>(k)] * std::cos(kw * t) +
                 cb[static_cast<std::size_t>(k)] * std::sin(kw * t);
        }
        sup = std::max(sup, std::abs(v));
    }
    if (sup == 0.0) return Expr::parse("0");

    // Rescaled so the parsed expression stays strictly below eps on the same
    // grid; the 1e-6 headroom absorbs coefficient re-rounding.
    const double scale = 0.999999 * eps / sup;
    std::string src = fmtDouble(ca[0] * scale);
    for (int k = 1; k < 6; ++k) {
        const std::string kw = fmtDouble(static_cast<double>(k) * w);
        src += " + " + fmtDouble(ca[static_cast<std::size_t>(k)] * scale) +
               "*cos(" + kw + "*t)";
        src += " + " + fmtDouble(cb[static_cast<std::size_t>(k)] * scale) +
               "*sin(" + kw + "*t)";
    }
    return Expr::parse(src);
}

}  // namespace detail

SolveResult perturbed_solve(const ProblemSpec& spec, const PerturbationSpec& pert) {
    requireValidated(spec, "perturbed_solve");
    if (pert.h1.dependsOnXY() || pert.h2.dependsOnXY())
        throw domain_error("perturbed_solve: perturbations must depend on t only");
    if (!std::isfinite(pert.eps1) || !std::isfinite(pert.eps2) || pert.eps1 < 0.0 ||
        pert.eps2 < 0.0)
        throw domain_error("perturbed_solve: eps1 and eps2 must be finite and nonnegative");
    const double s1 = denseSup(pert.h1, spec.a, spec.b, spec.N);
    const double s2 = denseSup(pert.h2, spec.a, spec.b, spec.N);
    if (s1 > pert.eps1)
        throw domain_error("perturbed_solve: sup |h1| = " + fmtDouble(s1) +
                           " exceeds eps1 = " + fmtDouble(pert.eps1));
    if (s2 > pert.eps2)
        throw domain_error("perturbed_solve: sup |h2| = " + fmtDouble(s2) +
                           " exceeds eps2 = " + fmtDouble(pert.eps2));

    ProblemSpec modified = spec;
    modified.f = Expr::sum(spec.f, pert.h1);
    modified.g = Expr::sum(spec.g, pert.h2);
    return picard_solve(modified, spec.solver.tol, spec.solver.maxIter,
                        spec.solver.theta);
}

UhReport uh_verify(const ProblemSpec& spec, const LipschitzHypothesis& hyp,
                   double eps1, double eps2, std::size_t trials,
                   std::uint64_t seed) {
    requireValidated(spec, "uh_verify");
    if (!std::isfinite(eps1) || !std::isfinite(eps2) || eps1 < 0.0 || eps2 < 0.0)
        throw domain_error("uh_verify: eps1 and eps2 must be finite and nonnegative");
    if (trials == 0) throw domain_error("uh_verify: trials must be at least 1");

    const UhCheck check = uh_constants(spec, hyp);
    if (check.verdict != Verdict::pass)
        throw domain_error("uh_verify: stability certificate fails (" + check.reason + ")");

    UhReport rep;
    rep.eps1 = eps1;
    rep.eps2 = eps2;
    rep.trials = trials;
    rep.seed = seed;
    rep.constants = check;
    rep.bound = *check.lambdaUH * std::max(eps1, eps2);
    const double r1 = 1.0 - check.A1;  // positive: the certificate passed
    const double r2 = 1.0 - check.A2;
    rep.boundX = check.C1 * eps1 / (check.Delta * r1) +
                 check.B1 * check.C2 * eps2 / (check.Delta * r1 * r2);
    rep.boundY = check.B2 * check.C1 * eps1 / (check.Delta * r1 * r2) +
                 check.C2 * eps2 / (check.Delta * r2);
    rep.maxRatio = 0.0;
    rep.allPass = true;

    const SolveResult base = picard_solve(spec, spec.solver.tol, spec.solver.maxIter,
                                          spec.solver.theta);

    rep.rows.reserve(trials);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        PerturbationSpec pert;
        pert.eps1 = eps1;
        pert.eps2 = eps2;
        pert.trials = trials;
        pert.seed = seed;
        pert.h1 = detail::randomTrigPoly(spec.a, spec.b, spec.N, eps1,
                                         detail::trialStream(seed, 2 * trial));
        pert.h2 = detail::randomTrigPoly(spec.a, spec.b, spec.N, eps2,
                                         detail::trialStream(seed, 2 * trial + 1));
        TrialRow row{};
        row.trial = trial;
        try {
            const SolveResult ps = perturbed_solve(spec, pert);
            row.converged = ps.converged;
            double dx = 0.0, dy = 0.0;
            for (std::size_t k = 0; k < ps.x.values.size(); ++k)
                dx = std::max(dx, std::abs(ps.x.values[k] - base.x.values[k]));
            for (std::size_t k = 0; k < ps.y.values.size(); ++k)
                dy = std::max(dy, std::abs(ps.y.values[k] - base.y.values[k]));
            row.dx = dx;
            row.dy = dy;
            row.d = dx + dy;
            row.ratio = rep.bound > 0.0 ? row.d / rep.bound : 0.0;
            row.pass = row.converged && row.d <= rep.bound;
        } catch (const divergence_error&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.converged = false;
            row.d = row.dx = row.dy = nan;
            row.ratio = nan;
            row.pass = false;
        }
        if (row.converged) rep.maxRatio = std::max(rep.maxRatio, row.ratio);
        rep.allPass = rep.allPass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace hfl
