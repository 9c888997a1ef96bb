#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hfl/errors.hpp"
#include "hfl/fracops.hpp"
#include "hfl/model.hpp"

namespace hfl {

namespace {

bool inOpenUnit(double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; }

void checkOrderPair(std::vector<std::string>& errors, const char* name,
                    double order, double type) {
    if (!inOpenUnit(order)) {
        errors.push_back(std::string(name) + ": order must lie in (0, 1)");
    }
    if (!std::isfinite(type) || type <= 0.0 || type >= 1.0) {
        errors.push_back(std::string(name) + ": type parameter must lie in (0, 1)");
    }
}

void checkTerms(std::vector<std::string>& errors, const char* name,
                const std::vector<BoundaryTerm>& terms, double a, double b) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const BoundaryTerm& term = terms[i];
        const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
        if (!std::isfinite(term.coeff)) {
            errors.push_back(where + ": coeff must be finite");
        }
        if (!std::isfinite(term.order) || term.order <= 0.0) {
            errors.push_back(where + ": order must be positive");
        }
        if (!std::isfinite(term.point) || term.point < a || term.point > b) {
            errors.push_back(where + ": point outside [a, b]");
        }
    }
}

}  // namespace

DerivedOrders derived_orders(const ProblemSpec& spec) {
    DerivedOrders d;
    d.gamma1 = spec.alpha1 + spec.beta1 - spec.alpha1 * spec.beta1;
    d.gamma2 = spec.alpha2 + spec.beta2 - spec.alpha2 * spec.beta2;
    d.delta1 = spec.p1 + spec.q1 - spec.p1 * spec.q1;
    d.delta2 = spec.p2 + spec.q2 - spec.p2 * spec.q2;
    return d;
}

Validation validate(const ProblemSpec& spec) {
    Validation v;
    auto& errors = v.errors;

    if (!std::isfinite(spec.a) || spec.a < 0.0) {
        errors.push_back("a: must be finite and >= 0");
    }
    if (!std::isfinite(spec.b) || !(spec.b > spec.a)) {
        errors.push_back("b: must satisfy b > a");
    }

    checkOrderPair(errors, "alpha1/beta1", spec.alpha1, spec.beta1);
    checkOrderPair(errors, "alpha2/beta2", spec.alpha2, spec.beta2);
    checkOrderPair(errors, "p1/q1", spec.p1, spec.q1);
    checkOrderPair(errors, "p2/q2", spec.p2, spec.q2);

    if (inOpenUnit(spec.alpha1) && inOpenUnit(spec.alpha2)) {
        const double s = spec.alpha1 + spec.alpha2;
        if (!(s > 1.0 && s <= 2.0)) {
            errors.push_back("alpha1+alpha2: must lie in (1, 2]");
        }
    }
    if (inOpenUnit(spec.p1) && inOpenUnit(spec.p2)) {
        const double s = spec.p1 + spec.p2;
        if (!(s > 1.0 && s <= 2.0)) {
            errors.push_back("p1+p2: must lie in (1, 2]");
        }
    }

    if (!std::isfinite(spec.lambda1)) errors.push_back("lambda1: must be finite");
    if (!std::isfinite(spec.lambda2)) errors.push_back("lambda2: must be finite");

    checkTerms(errors, "xTerms", spec.xTerms, spec.a, spec.b);
    checkTerms(errors, "yTerms", spec.yTerms, spec.a, spec.b);

    if (spec.N < 2) errors.push_back("N: must be >= 2");
    if (!(spec.solver.tol > 0.0) || !std::isfinite(spec.solver.tol)) {
        errors.push_back("solver.tol: must be positive");
    }
    if (spec.solver.maxIter < 1) errors.push_back("solver.maxIter: must be >= 1");
    if (!(spec.solver.theta > 0.0 && spec.solver.theta <= 1.0)) {
        errors.push_back("solver.theta: must lie in (0, 1]");
    }

    v.orders = derived_orders(spec);
    if (errors.empty()) {
        // Continuity of the boundary kernels (t-a)^(gamma1+alpha2-1) and
        // (t-a)^(delta1+p2-1) at t = a.
        if (!(v.orders.gamma1 + spec.alpha2 > 1.0)) {
            errors.push_back("gamma1+alpha2: must exceed 1");
        }
        if (!(v.orders.delta1 + spec.p2 > 1.0)) {
            errors.push_back("delta1+p2: must exceed 1");
        }
    }
    return v;
}

StructuralConstants structural_constants(const ProblemSpec& spec) {
    const DerivedOrders d = derived_orders(spec);
    const double ea = d.gamma1 + spec.alpha2;  // x-side kernel exponent + 1
    const double eb = d.delta1 + spec.p2;      // y-side kernel exponent + 1
    const double w = spec.b - spec.a;

    StructuralConstants s;
    s.phi1 = std::pow(w, ea - 1.0) / gamma(ea);
    s.phi4 = std::pow(w, eb - 1.0) / gamma(eb);
    s.phi2 = 0.0;
    for (const BoundaryTerm& term : spec.xTerms) {
        s.phi2 += term.coeff * std::pow(term.point - spec.a, eb + term.order - 1.0) /
                  gamma(eb + term.order);
    }
    s.phi3 = 0.0;
    for (const BoundaryTerm& term : spec.yTerms) {
        s.phi3 += term.coeff * std::pow(term.point - spec.a, ea + term.order - 1.0) /
                  gamma(ea + term.order);
    }
    s.Lambda = s.phi1 * s.phi4 - s.phi2 * s.phi3;

    const double scale = std::abs(s.phi1 * s.phi4) + std::abs(s.phi2 * s.phi3) + 1.0;
    if (std::abs(s.Lambda) < 1e-12 * scale) {
        throw domain_error(
            "structural_constants: singular boundary system (Lambda is zero "
            "within tolerance)");
    }
    return s;
}

}  // namespace hfl
