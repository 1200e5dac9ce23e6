#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stlcorpus::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 for usage and validation errors, 2 for I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stlcorpus::cli
