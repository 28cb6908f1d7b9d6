#pragma once

#include <string>
#include <vector>

namespace eigedge {

/// Runs the eigedge command line (detect / filters / count / compare).
/// Exit codes: 0 success, 1 I/O failure, 2 invalid flags, 3 algorithmic
/// failure (e.g. featureless image).
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

} // namespace eigedge
