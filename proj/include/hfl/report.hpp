#pragma once

#include <string>

#include "hfl/certificates.hpp"
#include "hfl/model.hpp"
#include "hfl/solver.hpp"
#include "hfl/stability.hpp"

namespace hfl {

/// 15-significant-digit form used for every computed value in reports.
std::string fmt15(double v);

/// Shortest round-trip decimal form used for echoed inputs; parsing it back
/// recovers the exact double.
std::string fmtExact(double v);

/// The problem instance as a problem-file JSON document. Feeding the result
/// back through the problem-file parser yields an identical spec; every
/// report embeds this object as its "echo" section.
std::string render_problem_json(const ProblemSpec& spec);

/// Certificate document: derived orders, structural constants, growth
/// bounds, the three check sections (null when the corresponding hypothesis
/// block is absent), and behavior notes.
std::string render_certificate(const ProblemSpec& spec, const Certificate& cert,
                               const std::string& command);

/// Run report for a solve: settings, iteration trace, residuals,
/// certification label, and the contraction post-check when available.
std::string render_solve_report(const ProblemSpec& spec, const SolveResult& result,
                                const std::string& command,
                                const std::string& method);

/// Solution samples as RFC-4180 CSV (CRLF line endings, header "t,x,y").
std::string render_solution_csv(const SolveResult& result);

/// Stability document: certified constants, scalar and per-component
/// bounds, the per-trial table, and the summary. Non-finite per-trial
/// values (diverged trials) render as null.
std::string render_uh_report(const ProblemSpec& spec, const UhReport& rep,
                             const std::string& command);

/// Writes content to path via a temporary file and rename, so the target is
/// never partially written. Throws hfl::io_error on failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hfl
