#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "hfl/errors.hpp"
#include "hfl/expr.hpp"

namespace {

std::size_t parseFailurePosition(const std::string& source) {
    try {
        (void)hfl::Expr::parse(source);
    } catch (const hfl::parse_error& e) {
        return e.position;
    }
    FAIL("expected a parse error for: " << source);
    return static_cast<std::size_t>(-1);
}

std::size_t evalFailurePosition(const std::string& source, double t, double x, double y) {
    const hfl::Expr e = hfl::Expr::parse(source);
    try {
        (void)e.eval(t, x, y);
    } catch (const hfl::eval_error& err) {
        return err.position;
    }
    FAIL("expected an eval error for: " << source);
    return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("printing is round-trip stable") {
    const std::vector<std::string> sources = {
        "1 + 0.05*sin(x + y)",
        "-(t*x)/(1 + y*y)",
        "sqrt(abs(x - y)) * exp(-t)",
        "2e-3 + t/3 - -x",
        "cos((t))",
        "0",
        "1 - 2 - 3",
        "2/4/2",
    };
    for (const std::string& s : sources) {
        CAPTURE(s);
        const hfl::Expr first = hfl::Expr::parse(s);
        const std::string canonical = first.print();
        const hfl::Expr second = hfl::Expr::parse(canonical);
        CHECK(second.print() == canonical);
        // The canonical form evaluates identically to the original.
        for (double t : {0.0, 0.3, 1.7}) {
            CHECK(first.eval(t, 0.4, -1.2) == second.eval(t, 0.4, -1.2));
        }
    }
}

TEST_CASE("evaluation follows standard precedence and associativity") {
    CHECK(hfl::Expr::parse("2 + 3*4").eval(0, 0, 0) == 14.0);
    CHECK(hfl::Expr::parse("2 - 3 - 4").eval(0, 0, 0) == -5.0);
    CHECK(hfl::Expr::parse("2/4/2").eval(0, 0, 0) == 0.25);
    CHECK(hfl::Expr::parse("-x*x").eval(0, 3, 0) == -9.0);
    CHECK(hfl::Expr::parse("1 + 0.05*sin(x - y)").eval(0.0, 2.0, 1.0) ==
          doctest::Approx(1.0 + 0.05 * std::sin(1.0)).epsilon(1e-15));
    CHECK(hfl::Expr::parse("exp(t)*cos(y)").eval(1.0, 0.0, 0.5) ==
          doctest::Approx(std::exp(1.0) * std::cos(0.5)).epsilon(1e-15));
    CHECK(hfl::Expr::parse("sqrt(abs(0 - t))").eval(4.0, 0, 0) == 2.0);
}

TEST_CASE("evaluation is deterministic") {
    const hfl::Expr e = hfl::Expr::parse("sin(t*x) - exp(y)/3 + sqrt(abs(x))");
    const double first = e.eval(0.7, -1.3, 0.25);
    for (int i = 0; i < 5; ++i) CHECK(e.eval(0.7, -1.3, 0.25) == first);
}

TEST_CASE("parse errors carry the byte offset of the offending token") {
    CHECK(parseFailurePosition("x + * y") == 4);
    CHECK(parseFailurePosition("foo(t)") == 0);
    CHECK(parseFailurePosition("") == 0);
    CHECK(parseFailurePosition("1 +") == 3);
    CHECK(parseFailurePosition("sin(") == 4);
    CHECK(parseFailurePosition("(1 + t") == 6);
    CHECK(parseFailurePosition("1 2") == 2);  // trailing input
}

TEST_CASE("eval errors carry the position of the failing node") {
    CHECK(evalFailurePosition("1/(t - 1)", 1.0, 0, 0) == 1);
    CHECK(evalFailurePosition("sqrt(0 - t)", 4.0, 0, 0) == 0);
    CHECK_THROWS_AS((void)hfl::Expr::parse("exp(t)").eval(1e6, 0, 0), hfl::eval_error);
}

TEST_CASE("dependsOnXY sees through nesting") {
    CHECK_FALSE(hfl::Expr::parse("sin(t) + 1").dependsOnXY());
    CHECK(hfl::Expr::parse("x").dependsOnXY());
    CHECK(hfl::Expr::parse("t + 0*y").dependsOnXY());
    CHECK(hfl::Expr::parse("exp(cos(sqrt(abs(x))))").dependsOnXY());
}

TEST_CASE("structural sums evaluate as the sum of the parts") {
    const hfl::Expr a = hfl::Expr::parse("1 + t");
    const hfl::Expr b = hfl::Expr::parse("x*x");
    const hfl::Expr s = hfl::Expr::sum(a, b);
    for (double t : {0.0, 0.5, 2.0}) {
        CHECK(s.eval(t, 3.0, 0.0) == a.eval(t, 3.0, 0.0) + b.eval(t, 3.0, 0.0));
    }
    // The printed sum reparses to the same canonical form.
    const std::string canonical = s.print();
    CHECK(hfl::Expr::parse(canonical).print() == canonical);
}

TEST_CASE("lipschitz_probe stays below the analytic constant") {
    // Linear map: the joint constant for |dx| + |dy| is max(0.3, 0.2).
    const hfl::Expr linear = hfl::Expr::parse("0.3*x - 0.2*y");
    const hfl::ProbeBox box{0.0, 1.0, -2.0, 2.0, -2.0, 2.0};
    const double probed = hfl::lipschitz_probe(linear, box, 2000);
    CHECK(probed <= 0.3 * (1.0 + 1e-9));
    CHECK(probed >= 0.29);

    // Bounded-slope nonlinearity: |0.05 sin(x+y)| has joint constant 0.05.
    const hfl::Expr wave = hfl::Expr::parse("0.05*sin(x + y)");
    const double probedWave = hfl::lipschitz_probe(wave, box, 2000);
    CHECK(probedWave <= 0.05 * (1.0 + 1e-9));
    CHECK(probedWave >= 0.045);
}

TEST_CASE("lipschitz_probe rejects undersized sampling") {
    const hfl::Expr e = hfl::Expr::parse("x");
    const hfl::ProbeBox box{0.0, 1.0, -1.0, 1.0, -1.0, 1.0};
    CHECK_THROWS_AS((void)hfl::lipschitz_probe(e, box, 99), hfl::domain_error);
}

}  // TEST_SUITE("expr")
