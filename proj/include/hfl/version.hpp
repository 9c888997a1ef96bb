#pragma once

namespace hfl {

/// Tool identity embedded in every report.
inline constexpr const char* kToolVersion = "hfl 1.0.0";

}  // namespace hfl
