#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lightsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitInputError = 2;

/// Entry point shared by the binary and the tests. Reports go to the output
/// directory; progress goes to out; failures are one JSON line on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a file's bytes. Throws lightsim::Error if unreadable.
std::string sha256_file(const std::string& path);

}  // namespace lightsim::cli
