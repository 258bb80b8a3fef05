#pragma once

// Line-oriented run configuration:
//
//   # comment
//   key = value
//
// Required keys: d1 d2 d3 d4 chi1 chi2 xi mu1 mu2 mu3 a1..a6 alpha beta gamma
// ndim nodes lo hi t_end. Optional: dt (auto), record_every (0.1),
// target (none), stop_tol (none). Unknown or repeated keys are rejected.

#include <filesystem>
#include <string>
#include <string_view>

#include "cats/solver.hpp"

namespace cats {

// Throws MissingKey, BadValue or UnknownKey; the message names the key.
SimConfig parse_config(std::string_view text);

// Throws IoFailure in addition to the parse errors.
SimConfig load_config(const std::filesystem::path& path);

// Renders cfg in the same format; parse_config(format_config(c)) == c.
std::string format_config(const SimConfig& cfg);

}  // namespace cats
