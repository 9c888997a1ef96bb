#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "hfl/errors.hpp"
#include "hfl/fracops.hpp"
#include "hfl/model.hpp"

#include "reference_values.hpp"
#include "test_util.hpp"

namespace {

bool hasIssue(const std::vector<std::string>& issues, const std::string& needle) {
    return std::any_of(issues.begin(), issues.end(), [&](const std::string& s) {
        return s.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("all shipped fixtures validate cleanly") {
    for (const char* name : {"coupled.json", "twosided.json", "contraction.json",
                             "coupled_growth.json", "linear.json", "zero.json"}) {
        CAPTURE(name);
        const hfl::ProblemSpec spec = testutil::loadFixture(name);
        const hfl::Validation v = hfl::validate(spec);
        CHECK(v.ok());
    }
}

TEST_CASE("derived orders match the closed form and the references") {
    const hfl::ProblemSpec coupled = testutil::loadFixture("coupled.json");
    const hfl::DerivedOrders d = hfl::derived_orders(coupled);
    CHECK(d.gamma1 == doctest::Approx(refvals::coupled::gamma1).epsilon(1e-15));
    CHECK(d.delta2 == doctest::Approx(refvals::coupled::delta2).epsilon(1e-15));

    const hfl::ProblemSpec two = testutil::loadFixture("twosided.json");
    const hfl::DerivedOrders d2 = hfl::derived_orders(two);
    CHECK(d2.gamma1 == doctest::Approx(refvals::twosided::gamma1).epsilon(1e-15));
    CHECK(d2.gamma2 == doctest::Approx(refvals::twosided::gamma2).epsilon(1e-15));
    CHECK(d2.delta1 == doctest::Approx(refvals::twosided::delta1).epsilon(1e-15));
    CHECK(d2.delta2 == doctest::Approx(refvals::twosided::delta2).epsilon(1e-15));
}

TEST_CASE("the derived order is monotone in the type parameter") {
    hfl::ProblemSpec spec = testutil::loadFixture("coupled.json");
    spec.alpha1 = 0.7;
    double previous = -1.0;
    for (int i = 0; i <= 10; ++i) {
        spec.beta1 = 0.1 * i;
        const double gamma1 = hfl::derived_orders(spec).gamma1;
        CHECK(gamma1 >= previous);
        previous = gamma1;
    }
    // Endpoints: gamma = alpha at beta = 0 and gamma = 1 at beta = 1.
    spec.beta1 = 0.0;
    CHECK(hfl::derived_orders(spec).gamma1 == 0.7);
    spec.beta1 = 1.0;
    CHECK(hfl::derived_orders(spec).gamma1 == 1.0);
}

TEST_CASE("validate reports every violation by field name") {
    const hfl::ProblemSpec good = testutil::loadFixture("coupled.json");

    hfl::ProblemSpec s = good;
    s.alpha1 = 1.0;
    CHECK(hasIssue(hfl::validate(s).errors, "alpha1/beta1"));

    s = good;
    s.alpha1 = 0.4;
    s.alpha2 = 0.5;
    CHECK(hasIssue(hfl::validate(s).errors, "alpha1+alpha2"));

    s = good;
    s.b = s.a;
    CHECK(hasIssue(hfl::validate(s).errors, "b:"));

    s = good;
    s.N = 1;
    CHECK(hasIssue(hfl::validate(s).errors, "N:"));

    s = good;
    s.solver.tol = 0.0;
    CHECK(hasIssue(hfl::validate(s).errors, "solver.tol"));

    s = good;
    s.solver.theta = 1.5;
    CHECK(hasIssue(hfl::validate(s).errors, "solver.theta"));

    s = good;
    s.xTerms[0].point = s.b + 0.5;
    CHECK(hasIssue(hfl::validate(s).errors, "xTerms[0]"));

    // Several violations at once: the list carries all of them.
    s = good;
    s.alpha1 = 1.0;
    s.N = 0;
    s.lambda1 = std::nan("");
    const hfl::Validation v = hfl::validate(s);
    CHECK(v.errors.size() >= 3);
    CHECK(hasIssue(v.errors, "alpha1/beta1"));
    CHECK(hasIssue(v.errors, "N:"));
    CHECK(hasIssue(v.errors, "lambda1"));
}

TEST_CASE("structural constants match the references") {
    const hfl::ProblemSpec coupled = testutil::loadFixture("coupled.json");
    const hfl::StructuralConstants sc = hfl::structural_constants(coupled);
    CHECK(testutil::relErr(sc.phi1, refvals::coupled::phi1) <= 1e-12);
    CHECK(testutil::relErr(sc.phi2, refvals::coupled::phi2) <= 1e-12);
    CHECK(sc.phi3 == 0.0);
    CHECK(testutil::relErr(sc.phi4, refvals::coupled::phi4) <= 1e-12);
    CHECK(testutil::relErr(sc.Lambda, refvals::coupled::Lambda) <= 1e-12);

    const hfl::ProblemSpec two = testutil::loadFixture("twosided.json");
    const hfl::StructuralConstants sc2 = hfl::structural_constants(two);
    CHECK(testutil::relErr(sc2.phi1, refvals::twosided::phi1) <= 1e-12);
    CHECK(testutil::relErr(sc2.phi2, refvals::twosided::phi2) <= 1e-12);
    CHECK(testutil::relErr(sc2.phi3, refvals::twosided::phi3) <= 1e-12);
    CHECK(testutil::relErr(sc2.phi4, refvals::twosided::phi4) <= 1e-12);
    CHECK(testutil::relErr(sc2.Lambda, refvals::twosided::Lambda) <= 1e-12);
}

TEST_CASE("structural constants are linear in each boundary coefficient") {
    hfl::ProblemSpec spec = testutil::loadFixture("coupled.json");
    const hfl::StructuralConstants base = hfl::structural_constants(spec);
    spec.xTerms[0].coeff *= 2.0;
    const hfl::StructuralConstants scaled = hfl::structural_constants(spec);
    CHECK(scaled.phi2 == 2.0 * base.phi2);  // doubling is exact in binary
    CHECK(scaled.phi1 == base.phi1);
    CHECK(scaled.phi3 == base.phi3);
    CHECK(scaled.phi4 == base.phi4);
}

TEST_CASE("permuting boundary terms leaves the constants unchanged") {
    hfl::ProblemSpec spec = testutil::loadFixture("coupled.json");
    // Split the single term into two with the same order and point.
    const hfl::BoundaryTerm original = spec.xTerms[0];
    hfl::BoundaryTerm first = original;
    hfl::BoundaryTerm second = original;
    first.coeff = 0.4 * original.coeff;
    second.coeff = 0.6 * original.coeff;
    second.point = 0.25;
    spec.xTerms = {first, second};
    const hfl::StructuralConstants ab = hfl::structural_constants(spec);
    spec.xTerms = {second, first};
    const hfl::StructuralConstants ba = hfl::structural_constants(spec);
    CHECK(ab.phi1 == ba.phi1);
    CHECK(ab.phi2 == ba.phi2);
    CHECK(ab.phi3 == ba.phi3);
    CHECK(ab.phi4 == ba.phi4);
    CHECK(ab.Lambda == ba.Lambda);
}

TEST_CASE("empty boundary sums give exactly zero coupling constants") {
    const hfl::ProblemSpec spec = testutil::loadFixture("contraction.json");
    const hfl::StructuralConstants sc = hfl::structural_constants(spec);
    CHECK(sc.phi2 == 0.0);
    CHECK(sc.phi3 == 0.0);
    CHECK(sc.Lambda == sc.phi1 * sc.phi4);
}

TEST_CASE("a singular boundary system is rejected") {
    // Choose both coupling terms so phi2 = phi3 = phi1 = phi4,
    // making Lambda = phi1*phi4 - phi2*phi3 vanish.
    hfl::ProblemSpec spec = testutil::loadFixture("coupled.json");
    const double e = hfl::derived_orders(spec).gamma1 + spec.alpha2;  // 1.625
    const double target = 1.0 / hfl::gamma(e);                       // phi1 at b-a = 1
    const double coeff = target * hfl::gamma(e + 0.5);               // order 0.5 at point 1
    spec.xTerms = {{coeff, 0.5, 1.0}};
    spec.yTerms = {{coeff, 0.5, 1.0}};
    CHECK_THROWS_AS((void)hfl::structural_constants(spec), hfl::domain_error);
}

}  // TEST_SUITE("model")
