#ifndef ULPA_CLI_HPP
#define ULPA_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ulpa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name. Results go to `out` as
// a single JSON document; usage problems go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ulpa::cli

#endif  // ULPA_CLI_HPP
