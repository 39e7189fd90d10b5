#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace affect::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Runs one command line (without the program name). Output files go to
/// --out, else $AFFECT_REC_HOME, else ./affect_rec_out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affect::cli
