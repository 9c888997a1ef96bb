#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "hfl/errors.hpp"
#include "hfl/model.hpp"
#include "hfl/problem_io.hpp"
#include "hfl/report.hpp"
#include "hfl/solver.hpp"

#include "test_util.hpp"

namespace {

using nlohmann::json;

void checkSpecsEqual(const hfl::ProblemSpec& a, const hfl::ProblemSpec& b) {
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
    CHECK(a.alpha1 == b.alpha1);
    CHECK(a.beta1 == b.beta1);
    CHECK(a.alpha2 == b.alpha2);
    CHECK(a.beta2 == b.beta2);
    CHECK(a.p1 == b.p1);
    CHECK(a.q1 == b.q1);
    CHECK(a.p2 == b.p2);
    CHECK(a.q2 == b.q2);
    CHECK(a.lambda1 == b.lambda1);
    CHECK(a.lambda2 == b.lambda2);
    REQUIRE(a.xTerms.size() == b.xTerms.size());
    for (std::size_t i = 0; i < a.xTerms.size(); ++i) {
        CHECK(a.xTerms[i].coeff == b.xTerms[i].coeff);
        CHECK(a.xTerms[i].order == b.xTerms[i].order);
        CHECK(a.xTerms[i].point == b.xTerms[i].point);
    }
    REQUIRE(a.yTerms.size() == b.yTerms.size());
    for (std::size_t i = 0; i < a.yTerms.size(); ++i) {
        CHECK(a.yTerms[i].coeff == b.yTerms[i].coeff);
        CHECK(a.yTerms[i].order == b.yTerms[i].order);
        CHECK(a.yTerms[i].point == b.yTerms[i].point);
    }
    CHECK(a.f.print() == b.f.print());
    CHECK(a.g.print() == b.g.print());
    CHECK(a.N == b.N);
    REQUIRE(a.growth.has_value() == b.growth.has_value());
    if (a.growth) {
        CHECK(a.growth->M1 == b.growth->M1);
        CHECK(a.growth->M2 == b.growth->M2);
        CHECK(a.growth->M3 == b.growth->M3);
        CHECK(a.growth->Mbar1 == b.growth->Mbar1);
        CHECK(a.growth->Mbar2 == b.growth->Mbar2);
        CHECK(a.growth->Mbar3 == b.growth->Mbar3);
    }
    REQUIRE(a.lipschitz.has_value() == b.lipschitz.has_value());
    if (a.lipschitz) {
        CHECK(a.lipschitz->L1cal == b.lipschitz->L1cal);
        CHECK(a.lipschitz->L2cal == b.lipschitz->L2cal);
        CHECK(a.lipschitz->L1zero == b.lipschitz->L1zero);
        CHECK(a.lipschitz->L2zero == b.lipschitz->L2zero);
    }
    CHECK(a.solver.tol == b.solver.tol);
    CHECK(a.solver.maxIter == b.solver.maxIter);
    CHECK(a.solver.theta == b.solver.theta);
}

std::string shellQuote(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

int runCli(const std::string& args, bool muteStderr = false) {
    std::string cmd = testutil::cliPath() + " " + args;
    if (muteStderr) cmd += " 2>/dev/null";
    return testutil::runCommand(cmd);
}

// Writes a modified copy of a fixture into dir and returns its path.
std::filesystem::path writeVariant(const std::filesystem::path& dir,
                                   const std::string& name,
                                   void (*mutate)(json&)) {
    json doc = json::parse(testutil::readFile(testutil::fixturePath("coupled.json")));
    mutate(doc);
    const std::filesystem::path path = dir / name;
    testutil::writeFileRaw(path, doc.dump(2));
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("problem files round-trip through the canonical renderer") {
    for (const char* name : {"coupled.json", "twosided.json", "zero.json"}) {
        CAPTURE(name);
        const hfl::ProblemSpec spec = testutil::loadFixture(name);
        const hfl::ProblemSpec again =
            hfl::parse_problem_text(hfl::render_problem_json(spec));
        checkSpecsEqual(spec, again);
    }
}

TEST_CASE("strict parsing names the offending fields") {
    try {
        (void)testutil::loadFixture("bad_unknown_field.json");
        FAIL("expected a parse error for an unknown field");
    } catch (const hfl::parse_error& e) {
        CHECK(std::string(e.what()).find("alpha3") != std::string::npos);
    }
    try {
        (void)testutil::loadFixture("bad_missing_alpha2.json");
        FAIL("expected a parse error for a missing field");
    } catch (const hfl::parse_error& e) {
        CHECK(std::string(e.what()).find("alpha2") != std::string::npos);
    }
    // Malformed expression sources surface the field and the offset.
    try {
        (void)hfl::parse_problem_text(hfl::render_problem_json(
            testutil::loadFixture("coupled.json")));  // sanity: parses
        json doc = json::parse(testutil::readFile(testutil::fixturePath("coupled.json")));
        doc["f"] = "1 + * x";
        (void)hfl::parse_problem_text(doc.dump());
        FAIL("expected a parse error for a malformed expression");
    } catch (const hfl::parse_error& e) {
        CHECK(std::string(e.what()).find(" f: ") != std::string::npos);
    }
    try {
        (void)hfl::load_problem_file(testutil::fixturePath("no_such_file.json"));
        FAIL("expected an io error");
    } catch (const hfl::io_error&) {
    }
}

TEST_CASE("formatting helpers are exact and fixed-width") {
    CHECK(hfl::fmtExact(0.1) == "0.1");
    CHECK(hfl::fmtExact(0.75) == "0.75");
    CHECK(std::stod(hfl::fmtExact(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(hfl::fmt15(0.0) == "0");
    CHECK(hfl::fmt15(2.0188719522435882).substr(0, 15) == "2.0188719522435");
}

TEST_CASE("atomic writes leave no temporary behind") {
    const std::filesystem::path dir = testutil::scratchDir("atomic");
    const std::filesystem::path target = dir / "out.txt";
    hfl::write_file_atomic(target.string(), "payload");
    CHECK(testutil::readFile(target) == "payload");
    CHECK_FALSE(std::filesystem::exists(target.string() + ".tmp"));
    CHECK_THROWS_AS(
        hfl::write_file_atomic((dir / "missing" / "out.txt").string(), "x"),
        hfl::io_error);
}

TEST_CASE("certify succeeds and embeds a reparsable echo") {
    const std::filesystem::path dir = testutil::scratchDir("certify");
    const std::filesystem::path out = dir / "cert.json";
    const int code =
        runCli("certify " + shellQuote(testutil::fixturePath("coupled.json")) + " -o " +
               shellQuote(out));
    CHECK(code == 0);

    const json doc = json::parse(testutil::readFile(out));
    CHECK(doc.at("tool").get<std::string>().find("hfl") != std::string::npos);
    CHECK(doc.at("command").is_string());
    CHECK(doc.at("orders").at("gamma1").is_number());
    CHECK(doc.at("structural").at("Lambda").is_number());
    CHECK(doc.at("growthBounds").at("F1").is_number());
    CHECK(doc.at("existence").at("verdict") == "pass");
    CHECK(doc.at("uniqueness").at("verdict") == "pass");
    CHECK(doc.at("ulamHyers").at("verdict") == "pass");
    CHECK(doc.at("notes").is_array());
    CHECK_FALSE(doc.at("notes").empty());

    // The echo section re-parses to the identical spec.
    const std::filesystem::path echoed = dir / "echo.json";
    testutil::writeFileRaw(echoed, doc.at("echo").dump(2));
    checkSpecsEqual(testutil::loadFixture("coupled.json"),
                    hfl::load_problem_file(echoed.string()));

    // Hypothesis-free specs render their check sections as null.
    json stripped = json::parse(testutil::readFile(testutil::fixturePath("coupled.json")));
    stripped.erase("growth");
    stripped.erase("lipschitz");
    const std::filesystem::path strippedPath = dir / "stripped.json";
    testutil::writeFileRaw(strippedPath, stripped.dump(2));
    const std::filesystem::path outStripped = dir / "cert_stripped.json";
    CHECK(runCli("certify " + shellQuote(strippedPath) + " -o " + shellQuote(outStripped)) == 0);
    const json docStripped = json::parse(testutil::readFile(outStripped));
    CHECK(docStripped.at("existence").is_null());
    CHECK(docStripped.at("uniqueness").is_null());
    CHECK(docStripped.at("ulamHyers").is_null());
}

TEST_CASE("solve writes csv samples plus a run report") {
    const std::filesystem::path dir = testutil::scratchDir("solve");
    const std::filesystem::path out = dir / "solution.csv";
    const int code = runCli("solve " + shellQuote(testutil::fixturePath("zero.json")) +
                            " -o " + shellQuote(out));
    CHECK(code == 0);

    const std::string csv = testutil::readFile(out);
    REQUIRE(csv.size() > 7);
    CHECK(csv.substr(0, 7) == "t,x,y\r\n");
    std::size_t lines = 0;
    for (std::size_t i = 0; i + 1 < csv.size(); ++i) {
        if (csv[i] == '\r' && csv[i + 1] == '\n') ++lines;
    }
    CHECK(lines == 50 + 2);  // header + N+1 sample rows

    const json rep = json::parse(testutil::readFile(out.string() + ".report.json"));
    CHECK(rep.at("method") == "picard");
    CHECK(rep.at("converged") == true);
    CHECK(rep.at("settings").at("tol").is_number());
    CHECK(rep.at("residuals").at("ode1").is_number());
    CHECK(rep.at("certification").get<std::string>().find("certified") == 0);
    CHECK(rep.at("echo").at("N") == 50);
}

TEST_CASE("solver overrides flow through the command line") {
    const std::filesystem::path dir = testutil::scratchDir("overrides");
    const std::filesystem::path out = dir / "solution.csv";

    // An unreachable tolerance with a one-iteration budget exits 3 but still
    // writes both outputs for inspection.
    const int budget =
        runCli("solve " + shellQuote(testutil::fixturePath("coupled.json")) + " -o " +
                   shellQuote(out) + " --max-iter 1 --tol 1e-14",
               true);
    CHECK(budget == 3);
    CHECK(std::filesystem::exists(out));
    const json rep = json::parse(testutil::readFile(out.string() + ".report.json"));
    CHECK(rep.at("converged") == false);
    CHECK(rep.at("iterations") == 1);
    CHECK(rep.at("settings").at("maxIter") == 1);

    // Overrides are validated like file-level settings.
    CHECK(runCli("solve " + shellQuote(testutil::fixturePath("coupled.json")) + " -o " +
                     shellQuote(out) + " --theta 1.5",
                 true) == 2);

    // The direct method refuses state-dependent forcing.
    CHECK(runCli("solve " + shellQuote(testutil::fixturePath("coupled.json")) + " -o " +
                     shellQuote(out) + " --method linear",
                 true) == 2);

    // And solves truly linear problems.
    const std::filesystem::path outLinear = dir / "linear.csv";
    CHECK(runCli("solve " + shellQuote(testutil::fixturePath("zero.json")) + " -o " +
                 shellQuote(outLinear) + " --method linear") == 0);
    const json linRep = json::parse(testutil::readFile(outLinear.string() + ".report.json"));
    CHECK(linRep.at("method") == "linear");
}

TEST_CASE("stability runs verify the bound and report per-trial rows") {
    const std::filesystem::path dir = testutil::scratchDir("stability");
    const std::filesystem::path out = dir / "uh.json";
    const int code = runCli("stability " + shellQuote(testutil::fixturePath("zero.json")) +
                            " -o " + shellQuote(out) +
                            " --eps1 1e-3 --eps2 1e-3 --trials 3 --seed 9");
    CHECK(code == 0);
    const json rep = json::parse(testutil::readFile(out));
    CHECK(rep.at("trials") == 3);
    CHECK(rep.at("seed") == 9);
    CHECK(rep.at("allPass") == true);
    CHECK(rep.at("rows").size() == 3);
    CHECK(rep.at("constants").at("verdict") == "pass");
    CHECK(rep.at("bound").is_number());
    CHECK(rep.at("notes").is_array());
}

TEST_CASE("exit codes distinguish the failure classes") {
    const std::filesystem::path dir = testutil::scratchDir("exitcodes");
    const std::filesystem::path out = dir / "out.json";

    // 1: unreadable input or unwritable output.
    CHECK(runCli("certify " + shellQuote(dir / "absent.json") + " -o " + shellQuote(out),
                 true) == 1);
    CHECK(runCli("certify " + shellQuote(testutil::fixturePath("coupled.json")) + " -o " +
                     shellQuote(dir / "missing" / "out.json"),
                 true) == 1);

    // 2: malformed or inadmissible input.
    CHECK(runCli("certify " + shellQuote(testutil::fixturePath("bad_unknown_field.json")) +
                     " -o " + shellQuote(out),
                 true) == 2);
    CHECK(runCli("certify " + shellQuote(testutil::fixturePath("bad_missing_alpha2.json")) +
                     " -o " + shellQuote(out),
                 true) == 2);
    CHECK(runCli("certify " + shellQuote(testutil::fixturePath("bad_point_outside.json")) +
                     " -o " + shellQuote(out),
                 true) == 2);
    const std::filesystem::path truncated = dir / "truncated.json";
    testutil::writeFileRaw(truncated, "{");
    CHECK(runCli("certify " + shellQuote(truncated) + " -o " + shellQuote(out), true) == 2);
    CHECK(runCli("", true) == 2);
    CHECK(runCli("frobnicate", true) == 2);
    CHECK(runCli("solve " + shellQuote(testutil::fixturePath("zero.json")) + " -o " +
                     shellQuote(out) + " --method bogus",
                 true) == 2);

    // 4: solver failure (divergent iteration).
    const std::filesystem::path divergent =
        writeVariant(dir, "divergent.json", [](json& doc) {
            doc["f"] = "1 + 25*x";
            doc["N"] = 100;
        });
    CHECK(runCli("solve " + shellQuote(divergent) + " -o " + shellQuote(dir / "div.csv"),
                 true) == 4);

    // 5: stability trials that cannot verify the bound (iteration budget
    // exhausted inside the trials).
    const std::filesystem::path starved =
        writeVariant(dir, "starved.json", [](json& doc) {
            doc["N"] = 100;
            doc["solver"] = {{"maxIter", 2}};
        });
    CHECK(runCli("stability " + shellQuote(starved) + " -o " + shellQuote(out) +
                     " --eps1 1e-2 --eps2 1e-2 --trials 2 --seed 4",
                 true) == 5);

    // 6: a certificate that fails before any trial runs.
    const std::filesystem::path uncertified =
        writeVariant(dir, "uncertified.json", [](json& doc) {
            doc["lipschitz"]["L1cal"] = 3.0;
        });
    CHECK(runCli("stability " + shellQuote(uncertified) + " -o " + shellQuote(out) +
                     " --eps1 1e-2 --eps2 1e-2 --trials 2 --seed 4",
                 true) == 6);

    // Stability requires a Lipschitz block up front.
    const std::filesystem::path noHyp =
        writeVariant(dir, "no_hyp.json", [](json& doc) { doc.erase("lipschitz"); });
    CHECK(runCli("stability " + shellQuote(noHyp) + " -o " + shellQuote(out) +
                     " --eps1 1e-2 --eps2 1e-2 --trials 2 --seed 4",
                 true) == 2);

    // 0 plus the version banner.
    CHECK(runCli("--version") == 0);
}

}  // TEST_SUITE("cli")
