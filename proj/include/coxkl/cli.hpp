#pragma once

// Command-line front end. Exit codes: 0 ok, 1 bad input, 2 computation
// failed, 3 I/O.

#include <iosfwd>
#include <string>
#include <vector>

namespace coxkl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitCompute = 2;
inline constexpr int kExitIo = 3;

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace coxkl::cli
