// Command-line front end: encode, solve, simulate, estimate, replay.
// Every command writes <out>.manifest.json next to its main output.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace hubo::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kValidationFailure = 2 };

/// argv excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a file's bytes.
std::string file_digest(const std::string& path);

std::string manifest_path(const std::string& out);

}  // namespace hubo::cli
