#pragma once

#include <string>

#include "hfl/model.hpp"

namespace hfl {

/// Parses problem-file JSON text into a ProblemSpec. Strict by design:
/// unknown fields are rejected by name (typos would silently change the
/// mathematics), missing required fields are reported by name, and the f/g
/// expression sources are compiled. Throws hfl::parse_error; structural
/// admissibility is validate()'s job, not the parser's.
ProblemSpec parse_problem_text(const std::string& text);

/// Reads path and parses it. Throws hfl::io_error when the file cannot be
/// read, hfl::parse_error on malformed content.
ProblemSpec load_problem_file(const std::string& path);

}  // namespace hfl
