#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hfl/certificates.hpp"
#include "hfl/errors.hpp"
#include "hfl/fracops.hpp"
#include "hfl/model.hpp"
#include "hfl/solver.hpp"

namespace hfl {

namespace {

constexpr std::size_t kMaxLinearN = 20000;

// Everything both operator components share for one application.
struct OperatorFrame {
    DerivedOrders orders;
    StructuralConstants sc;
    double ea;  // gamma1 + alpha2
    double eb;  // delta1 + p2
    double aa;  // alpha1 + alpha2
    double pp;  // p1 + p2
};

OperatorFrame makeFrame(const ProblemSpec& spec) {
    OperatorFrame fr;
    fr.orders = derived_orders(spec);
    fr.sc = structural_constants(spec);
    fr.ea = fr.orders.gamma1 + spec.alpha2;
    fr.eb = fr.orders.delta1 + spec.p2;
    fr.aa = spec.alpha1 + spec.alpha2;
    fr.pp = spec.p1 + spec.p2;
    return fr;
}

// (t-a)^(e-1) / (Lambda * Gamma(e)) sampled on the grid.
std::vector<double> kernelColumn(const ProblemSpec& spec, std::size_t n,
                                 double e, double Lambda) {
    std::vector<double> col(n + 1);
    const double g = gamma(e);
    const GridFunction probe = GridFunction::zeros(spec.a, spec.b, n);
    for (std::size_t k = 0; k <= n; ++k) {
        col[k] = std::pow(probe.node(k) - spec.a, e - 1.0) / (Lambda * g);
    }
    return col;
}

GridFunction sampleExpr(const Expr& e, const ProblemSpec& spec,
                        const GridFunction& x, const GridFunction& y) {
    GridFunction out = GridFunction::zeros(spec.a, spec.b, spec.N);
    for (std::size_t k = 0; k <= spec.N; ++k) {
        out.values[k] = e.eval(out.node(k), x.values[k], y.values[k]);
    }
    return out;
}

struct BoundaryFunctionals {
    double omega1;
    double omega2;
};

// Omega1/Omega2 evaluated from the current iterates and sampled
// nonlinearities. IF = I^{a1+a2} f-samples, IG = I^{p1+p2} g-samples,
// IX = I^{a2} x, IY = I^{p2} y (all on the grid; node N is t = b).
BoundaryFunctionals boundaryFunctionals(const ProblemSpec& spec,
                                        const OperatorFrame& fr,
                                        const GridFunction& fSamples,
                                        const GridFunction& gSamples,
                                        const GridFunction& x,
                                        const GridFunction& y,
                                        const GridFunction& IF,
                                        const GridFunction& IG,
                                        const GridFunction& IX,
                                        const GridFunction& IY) {
    const std::size_t n = spec.N;
    double omega1 = -IF.values[n] + spec.lambda1 * IX.values[n];
    for (const BoundaryTerm& term : spec.xTerms) {
        omega1 += term.coeff *
                  rl_integral_at(gSamples, fr.pp + term.order, term.point);
        omega1 -= spec.lambda2 * term.coeff *
                  rl_integral_at(y, spec.p2 + term.order, term.point);
    }
    double omega2 = -IG.values[n] + spec.lambda2 * IY.values[n];
    for (const BoundaryTerm& term : spec.yTerms) {
        omega2 += term.coeff *
                  rl_integral_at(fSamples, fr.aa + term.order, term.point);
        omega2 -= spec.lambda1 * term.coeff *
                  rl_integral_at(x, spec.alpha2 + term.order, term.point);
    }
    return {omega1, omega2};
}

std::pair<GridFunction, GridFunction> applyBoth(const ProblemSpec& spec,
                                                const OperatorFrame& fr,
                                                const GridFunction& x,
                                                const GridFunction& y) {
    const GridFunction fSamples = sampleExpr(spec.f, spec, x, y);
    const GridFunction gSamples = sampleExpr(spec.g, spec, x, y);
    const GridFunction IF = rl_integral(fSamples, fr.aa);
    const GridFunction IG = rl_integral(gSamples, fr.pp);
    const GridFunction IX = rl_integral(x, spec.alpha2);
    const GridFunction IY = rl_integral(y, spec.p2);

    const BoundaryFunctionals om = boundaryFunctionals(
        spec, fr, fSamples, gSamples, x, y, IF, IG, IX, IY);
    const double bracket1 = fr.sc.phi4 * om.omega1 + fr.sc.phi2 * om.omega2;
    const double bracket2 = fr.sc.phi3 * om.omega1 + fr.sc.phi1 * om.omega2;

    const std::vector<double> ker1 =
        kernelColumn(spec, spec.N, fr.ea, fr.sc.Lambda);
    const std::vector<double> ker2 =
        kernelColumn(spec, spec.N, fr.eb, fr.sc.Lambda);

    GridFunction outX = GridFunction::zeros(spec.a, spec.b, spec.N);
    GridFunction outY = GridFunction::zeros(spec.a, spec.b, spec.N);
    for (std::size_t k = 0; k <= spec.N; ++k) {
        outX.values[k] = IF.values[k] - spec.lambda1 * IX.values[k] +
                         ker1[k] * bracket1;
        outY.values[k] = IG.values[k] - spec.lambda2 * IY.values[k] +
                         ker2[k] * bracket2;
    }
    return {std::move(outX), std::move(outY)};
}

void requireValidated(const ProblemSpec& spec, const char* op) {
    const Validation v = validate(spec);
    if (!v.ok()) {
        std::vector<std::string> issues = v.errors;
        issues.insert(issues.begin(),
                      std::string(op) + ": spec fails validation");
        throw validation_error(std::move(issues));
    }
}

void requireMatchingGrids(const ProblemSpec& spec, const GridFunction& x,
                          const GridFunction& y, const char* op) {
    if (x.a != spec.a || x.b != spec.b || x.cells() != spec.N ||
        !sameGrid(x, y)) {
        throw domain_error(std::string(op) +
                           ": grids must match the spec resolution");
    }
}

}  // namespace

GridFunction apply_A1(const ProblemSpec& spec, const GridFunction& x,
                      const GridFunction& y) {
    requireValidated(spec, "apply_A1");
    requireMatchingGrids(spec, x, y, "apply_A1");
    return applyBoth(spec, makeFrame(spec), x, y).first;
}

GridFunction apply_A2(const ProblemSpec& spec, const GridFunction& x,
                      const GridFunction& y) {
    requireValidated(spec, "apply_A2");
    requireMatchingGrids(spec, x, y, "apply_A2");
    return applyBoth(spec, makeFrame(spec), x, y).second;
}

SolveResult picard_solve(const ProblemSpec& spec, double tol,
                         std::size_t maxIter, double theta) {
    requireValidated(spec, "picard_solve");
    if (!(tol > 0.0)) {
        throw domain_error("picard_solve: tol must be positive");
    }
    if (!(theta > 0.0 && theta <= 1.0)) {
        throw domain_error("picard_solve: theta must lie in (0, 1]");
    }
    const OperatorFrame fr = makeFrame(spec);

    SolveResult result;
    result.x = GridFunction::zeros(spec.a, spec.b, spec.N);
    result.y = GridFunction::zeros(spec.a, spec.b, spec.N);

    for (std::size_t iter = 1; iter <= maxIter; ++iter) {
        auto [ax, ay] = applyBoth(spec, fr, result.x, result.y);
        if (theta != 1.0) {
            for (std::size_t k = 0; k <= spec.N; ++k) {
                ax.values[k] =
                    (1.0 - theta) * result.x.values[k] + theta * ax.values[k];
                ay.values[k] =
                    (1.0 - theta) * result.y.values[k] + theta * ay.values[k];
            }
        }
        double delta = 0.0;
        for (std::size_t k = 0; k <= spec.N; ++k) {
            delta = std::max(delta,
                             std::abs(ax.values[k] - result.x.values[k]));
        }
        double deltaY = 0.0;
        for (std::size_t k = 0; k <= spec.N; ++k) {
            deltaY = std::max(deltaY,
                              std::abs(ay.values[k] - result.y.values[k]));
        }
        delta += deltaY;

        const double scale =
            1.0 + result.x.supNorm() + result.y.supNorm();
        result.errorTrace.push_back(delta);
        if (result.errorTrace.size() >= 2) {
            const double prev =
                result.errorTrace[result.errorTrace.size() - 2];
            result.contractionRatios.push_back(prev > 0.0 ? delta / prev
                                                          : 0.0);
        }
        result.x = std::move(ax);
        result.y = std::move(ay);
        result.iterations = iter;

        if (delta <= tol * scale) {
            result.converged = true;
            break;
        }

        // Divergence: five consecutive strictly growing deltas that gained
        // at least a factor of 10 over the window.
        const std::size_t m = result.errorTrace.size();
        if (m >= 6) {
            bool growing = true;
            for (std::size_t i = m - 5; i < m; ++i) {
                if (!(result.errorTrace[i] > result.errorTrace[i - 1])) {
                    growing = false;
                    break;
                }
            }
            if (growing &&
                result.errorTrace[m - 1] >= 10.0 * result.errorTrace[m - 6]) {
                throw divergence_error(
                    "picard_solve: iteration diverged (deltas grew 10x over "
                    "five consecutive iterations)",
                    result.errorTrace);
            }
        }
    }

    result.residuals = residual_check(spec, result);

    if (spec.lipschitz) {
        const UniquenessCheck uc = banach_check(spec, *spec.lipschitz);
        if (uc.kappa < 1.0 && !result.contractionRatios.empty()) {
            ContractionCheck cc;
            cc.kappa = uc.kappa;
            const std::size_t count =
                std::min<std::size_t>(5, result.contractionRatios.size());
            cc.maxRatioFinal5 = 0.0;
            for (std::size_t i = result.contractionRatios.size() - count;
                 i < result.contractionRatios.size(); ++i) {
                cc.maxRatioFinal5 =
                    std::max(cc.maxRatioFinal5, result.contractionRatios[i]);
            }
            cc.withinSlack = cc.maxRatioFinal5 <= uc.kappa + 0.1;
            result.contraction = cc;
        }
    }
    return result;
}

SolveResult linear_solve(const ProblemSpec& spec) {
    requireValidated(spec, "linear_solve");
    if (spec.f.dependsOnXY() || spec.g.dependsOnXY()) {
        throw domain_error("linear_solve: requires t-only f and g");
    }
    if (spec.N > kMaxLinearN) {
        throw domain_error(
            "linear_solve: N exceeds the dense-assembly cap of 20000");
    }
    const OperatorFrame fr = makeFrame(spec);
    const std::size_t n = spec.N;
    const std::size_t dim = 2 * (n + 1);

    const GridFunction zero = GridFunction::zeros(spec.a, spec.b, n);
    const GridFunction fSamples = sampleExpr(spec.f, spec, zero, zero);
    const GridFunction gSamples = sampleExpr(spec.g, spec, zero, zero);
    const GridFunction IF = rl_integral(fSamples, fr.aa);
    const GridFunction IG = rl_integral(gSamples, fr.pp);

    const std::vector<double> ker1 = kernelColumn(spec, n, fr.ea, fr.sc.Lambda);
    const std::vector<double> ker2 = kernelColumn(spec, n, fr.eb, fr.sc.Lambda);

    // Constant parts of Omega1/Omega2 (the f/g blocks).
    double om1Const = -IF.values[n];
    for (const BoundaryTerm& term : spec.xTerms) {
        om1Const += term.coeff *
                    rl_integral_at(gSamples, fr.pp + term.order, term.point);
    }
    double om2Const = -IG.values[n];
    for (const BoundaryTerm& term : spec.yTerms) {
        om2Const += term.coeff *
                    rl_integral_at(fSamples, fr.aa + term.order, term.point);
    }

    // Linear parts of Omega1/Omega2 as weight vectors against the unknowns:
    //   Omega1 = om1Const + <omega1x, x> + <omega1y, y> and likewise Omega2.
    Eigen::VectorXd omega1x = Eigen::VectorXd::Zero(n + 1);
    Eigen::VectorXd omega1y = Eigen::VectorXd::Zero(n + 1);
    Eigen::VectorXd omega2x = Eigen::VectorXd::Zero(n + 1);
    Eigen::VectorXd omega2y = Eigen::VectorXd::Zero(n + 1);
    {
        const std::vector<double> wbA2 =
            detail::rl_weights_at(zero, spec.alpha2, spec.b);
        const std::vector<double> wbP2 =
            detail::rl_weights_at(zero, spec.p2, spec.b);
        for (std::size_t j = 0; j <= n; ++j) {
            omega1x[j] = spec.lambda1 * wbA2[j];
            omega2y[j] = spec.lambda2 * wbP2[j];
        }
        for (const BoundaryTerm& term : spec.xTerms) {
            const std::vector<double> w =
                detail::rl_weights_at(zero, spec.p2 + term.order, term.point);
            for (std::size_t j = 0; j <= n; ++j) {
                omega1y[j] -= spec.lambda2 * term.coeff * w[j];
            }
        }
        for (const BoundaryTerm& term : spec.yTerms) {
            const std::vector<double> w = detail::rl_weights_at(
                zero, spec.alpha2 + term.order, term.point);
            for (std::size_t j = 0; j <= n; ++j) {
                omega2x[j] -= spec.lambda1 * term.coeff * w[j];
            }
        }
    }

    // x_k - [ -lambda1 (W x)_k + ker1_k (phi4 Omega1 + phi2 Omega2) ] = IF_k
    // and the mirror equation; Omega-linear parts fold into the matrix.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs(dim);

    const Eigen::VectorXd b1x = fr.sc.phi4 * omega1x + fr.sc.phi2 * omega2x;
    const Eigen::VectorXd b1y = fr.sc.phi4 * omega1y + fr.sc.phi2 * omega2y;
    const Eigen::VectorXd b2x = fr.sc.phi3 * omega1x + fr.sc.phi1 * omega2x;
    const Eigen::VectorXd b2y = fr.sc.phi3 * omega1y + fr.sc.phi1 * omega2y;
    const double b1Const = fr.sc.phi4 * om1Const + fr.sc.phi2 * om2Const;
    const double b2Const = fr.sc.phi3 * om1Const + fr.sc.phi1 * om2Const;

    for (std::size_t k = 0; k <= n; ++k) {
        const double tk = zero.node(k);
        const std::vector<double> wA2 =
            detail::rl_weights_at(zero, spec.alpha2, tk);
        const std::vector<double> wP2 = detail::rl_weights_at(zero, spec.p2, tk);
        for (std::size_t j = 0; j <= n; ++j) {
            M(k, j) = spec.lambda1 * wA2[j] - ker1[k] * b1x[j];
            M(k, n + 1 + j) = -ker1[k] * b1y[j];
            M(n + 1 + k, j) = -ker2[k] * b2x[j];
            M(n + 1 + k, n + 1 + j) = spec.lambda2 * wP2[j] - ker2[k] * b2y[j];
        }
        M(k, k) += 1.0;
        M(n + 1 + k, n + 1 + k) += 1.0;
        rhs[k] = IF.values[k] + ker1[k] * b1Const;
        rhs[n + 1 + k] = IG.values[k] + ker2[k] * b2Const;
    }

    Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu(M);
    const double rcond = lu.rcond();
    if (!(rcond >= 1e-14)) {
        throw conditioning_error(
            "linear_solve: assembled system is numerically singular "
            "(condition estimate " +
                std::to_string(rcond > 0.0 ? 1.0 / rcond : 0.0) + ")",
            rcond > 0.0 ? 1.0 / rcond : 0.0);
    }
    const Eigen::VectorXd u = lu.solve(rhs);

    SolveResult result;
    result.x = GridFunction::zeros(spec.a, spec.b, n);
    result.y = GridFunction::zeros(spec.a, spec.b, n);
    for (std::size_t k = 0; k <= n; ++k) {
        result.x.values[k] = u[k];
        result.y.values[k] = u[n + 1 + k];
    }
    result.iterations = 1;
    result.converged = true;
    result.errorTrace.clear();
    result.residuals = residual_check(spec, result);
    return result;
}

Residuals residual_check(const ProblemSpec& spec, const SolveResult& result) {
    requireValidated(spec, "residual_check");
    requireMatchingGrids(spec, result.x, result.y, "residual_check");
    const std::size_t n = spec.N;
    const GridFunction& x = result.x;
    const GridFunction& y = result.y;

    // r1 = HD^{alpha1,beta1}( HD^{alpha2,beta2} x + lambda1 x ) - f(.,x,y)
    GridFunction inner1 = hilfer_derivative(x, {spec.alpha2, spec.beta2});
    for (std::size_t k = 0; k <= n; ++k) {
        inner1.values[k] += spec.lambda1 * x.values[k];
    }
    const GridFunction lhs1 = hilfer_derivative(inner1, {spec.alpha1, spec.beta1});

    GridFunction inner2 = hilfer_derivative(y, {spec.p2, spec.q2});
    for (std::size_t k = 0; k <= n; ++k) {
        inner2.values[k] += spec.lambda2 * y.values[k];
    }
    const GridFunction lhs2 = hilfer_derivative(inner2, {spec.p1, spec.q1});

    const auto lo = static_cast<std::size_t>(
        std::ceil(0.02 * static_cast<double>(n)));
    const auto hi = static_cast<std::size_t>(
        std::floor(0.98 * static_cast<double>(n)));

    Residuals r{};
    r.ode1 = 0.0;
    r.ode2 = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double tk = x.node(k);
        const double f = spec.f.eval(tk, x.values[k], y.values[k]);
        const double g = spec.g.eval(tk, x.values[k], y.values[k]);
        r.ode1 = std::max(r.ode1, std::abs(lhs1.values[k] - f));
        r.ode2 = std::max(r.ode2, std::abs(lhs2.values[k] - g));
    }

    r.bc_xa = std::abs(x.values[0]);
    r.bc_ya = std::abs(y.values[0]);
    double xb = x.values[n];
    for (const BoundaryTerm& term : spec.xTerms) {
        xb -= term.coeff * rl_integral_at(y, term.order, term.point);
    }
    r.bc_xb = std::abs(xb);
    double yb = y.values[n];
    for (const BoundaryTerm& term : spec.yTerms) {
        yb -= term.coeff * rl_integral_at(x, term.order, term.point);
    }
    r.bc_yb = std::abs(yb);
    return r;
}

}  // namespace hfl
