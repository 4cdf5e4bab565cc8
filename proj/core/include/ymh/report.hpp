#pragma once

#include <string>
#include <string_view>

#include "ymh/verifier.hpp"

namespace ymh {

/// One line per entry:
///   equation=<id> max_abs=<v> rms=<v> n_samples=<n> fd_step=<v>
/// Values use the shortest round-trip representation.
std::string format_report(const ResidualReport& r);

/// Inverse of format_report. Blank lines and lines starting with '#' are
/// skipped. Throws std::invalid_argument on malformed records.
ResidualReport parse_report(std::string_view text);

}  // namespace ymh
