// Command-line front end: build, reverse, detect, validate, score.

#ifndef NEGATA_CLI_HPP_
#define NEGATA_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace negata {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace negata

#endif  // NEGATA_CLI_HPP_
