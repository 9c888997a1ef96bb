#include <cstddef>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hfl/certificates.hpp"
#include "hfl/errors.hpp"
#include "hfl/model.hpp"
#include "hfl/problem_io.hpp"
#include "hfl/report.hpp"
#include "hfl/solver.hpp"
#include "hfl/stability.hpp"
#include "hfl/version.hpp"

namespace {

// Exit code map (documented in the README):
//   0 success            1 file I/O failure
//   2 input error        3 iteration limit reached without convergence
//   4 solver failure     5 stability bound violated in some trial
//   6 stability certificate fails (nothing to verify against)
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInput = 2;
constexpr int kExitMaxIter = 3;
constexpr int kExitSolverFailure = 4;
constexpr int kExitBoundViolation = 5;
constexpr int kExitFailingCertificate = 6;

hfl::ProblemSpec loadValidated(const std::string& path) {
    hfl::ProblemSpec spec = hfl::load_problem_file(path);
    const hfl::Validation v = hfl::validate(spec);
    if (!v.ok()) throw hfl::validation_error(v.errors);
    return spec;
}

int runCertify(const std::string& file, const std::string& out) {
    const hfl::ProblemSpec spec = loadValidated(file);
    const hfl::Certificate cert = hfl::certify(spec);
    const std::string command = "certify " + file + " -o " + out;
    hfl::write_file_atomic(out, hfl::render_certificate(spec, cert, command));
    return kExitOk;
}

int runSolve(const std::string& file, const std::string& out,
             const std::string& method, const double* tol,
             const std::size_t* maxIter, const double* theta) {
    hfl::ProblemSpec spec = loadValidated(file);
    if (tol) spec.solver.tol = *tol;
    if (maxIter) spec.solver.maxIter = *maxIter;
    if (theta) spec.solver.theta = *theta;
    const hfl::Validation v = hfl::validate(spec);
    if (!v.ok()) throw hfl::validation_error(v.errors);

    hfl::SolveResult result;
    if (method == "picard") {
        result = hfl::picard_solve(spec, spec.solver.tol, spec.solver.maxIter,
                                   spec.solver.theta);
    } else {
        result = hfl::linear_solve(spec);
    }

    const std::string command = "solve " + file + " -o " + out + " --method " +
                                method + " --tol " + hfl::fmtExact(spec.solver.tol) +
                                " --max-iter " + std::to_string(spec.solver.maxIter) +
                                " --theta " + hfl::fmtExact(spec.solver.theta);
    hfl::write_file_atomic(out, hfl::render_solution_csv(result));
    hfl::write_file_atomic(out + ".report.json",
                           hfl::render_solve_report(spec, result, command, method));
    if (!result.converged) {
        std::cerr << "solve: iteration limit (" << spec.solver.maxIter
                  << ") reached without convergence; outputs written\n";
        return kExitMaxIter;
    }
    return kExitOk;
}

int runStability(const std::string& file, const std::string& out, double eps1,
                 double eps2, std::size_t trials, std::uint64_t seed) {
    const hfl::ProblemSpec spec = loadValidated(file);
    if (!spec.lipschitz)
        throw hfl::validation_error(
            {"stability: the problem file carries no lipschitz block"});
    const hfl::UhCheck check = hfl::uh_constants(spec, *spec.lipschitz);
    if (check.verdict != hfl::Verdict::pass) {
        std::cerr << "stability: certificate fails: " << check.reason << '\n';
        return kExitFailingCertificate;
    }
    const hfl::UhReport rep =
        hfl::uh_verify(spec, *spec.lipschitz, eps1, eps2, trials, seed);
    const std::string command = "stability " + file + " -o " + out + " --eps1 " +
                                hfl::fmtExact(eps1) + " --eps2 " + hfl::fmtExact(eps2) +
                                " --trials " + std::to_string(trials) + " --seed " +
                                std::to_string(seed);
    hfl::write_file_atomic(out, hfl::render_uh_report(spec, rep, command));
    if (!rep.allPass) {
        std::size_t failing = 0;
        for (const hfl::TrialRow& row : rep.rows)
            if (!row.pass) ++failing;
        std::cerr << "stability: " << failing
                  << " trial(s) violate the certified bound; report written\n";
        return kExitBoundViolation;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled Hilfer-Langevin boundary-value solver and certificate checker"};
    app.set_version_flag("--version", hfl::kToolVersion);
    app.require_subcommand(1);

    std::string certifyFile, certifyOut;
    CLI::App* certifyCmd =
        app.add_subcommand("certify", "Compute existence/uniqueness/stability certificates");
    certifyCmd->add_option("file", certifyFile, "Problem file (JSON)")->required();
    certifyCmd->add_option("-o,--out", certifyOut, "Certificate output path")->required();

    std::string solveFile, solveOut;
    std::string method = "picard";
    double tolValue = 0.0, thetaValue = 0.0;
    std::size_t maxIterValue = 0;
    CLI::App* solveCmd = app.add_subcommand("solve", "Solve the boundary-value system");
    solveCmd->add_option("file", solveFile, "Problem file (JSON)")->required();
    solveCmd->add_option("-o,--out", solveOut, "Solution CSV path (run report at <out>.report.json)")
        ->required();
    solveCmd->add_option("--method", method, "picard (default) or linear")
        ->check(CLI::IsMember({"picard", "linear"}));
    CLI::Option* tolOpt =
        solveCmd->add_option("--tol", tolValue, "Override solver tolerance");
    CLI::Option* maxIterOpt =
        solveCmd->add_option("--max-iter", maxIterValue, "Override iteration limit");
    CLI::Option* thetaOpt =
        solveCmd->add_option("--theta", thetaValue, "Override damping factor");

    std::string stabilityFile, stabilityOut;
    double eps1 = 0.0, eps2 = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    CLI::App* stabilityCmd =
        app.add_subcommand("stability", "Run seeded Ulam-Hyers perturbation trials");
    stabilityCmd->add_option("file", stabilityFile, "Problem file (JSON)")->required();
    stabilityCmd->add_option("-o,--out", stabilityOut, "Report output path")->required();
    stabilityCmd->add_option("--eps1", eps1, "Perturbation budget for f")->required();
    stabilityCmd->add_option("--eps2", eps2, "Perturbation budget for g")->required();
    stabilityCmd->add_option("--trials", trials, "Number of trials")->required();
    stabilityCmd->add_option("--seed", seed, "RNG seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (certifyCmd->parsed()) return runCertify(certifyFile, certifyOut);
        if (solveCmd->parsed())
            return runSolve(solveFile, solveOut, method,
                            tolOpt->count() ? &tolValue : nullptr,
                            maxIterOpt->count() ? &maxIterValue : nullptr,
                            thetaOpt->count() ? &thetaValue : nullptr);
        if (stabilityCmd->parsed())
            return runStability(stabilityFile, stabilityOut, eps1, eps2, trials, seed);
    } catch (const hfl::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const hfl::validation_error& e) {
        for (const std::string& issue : e.issues) std::cerr << "error: " << issue << '\n';
        return kExitInput;
    } catch (const hfl::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const hfl::divergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const hfl::conditioning_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const hfl::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
