#pragma once

#include <iosfwd>

namespace mlfft {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int not_covered = 2;
inline constexpr int usage = 64;
inline constexpr int cap_exceeded = 65;
inline constexpr int hash_mismatch = 66;
}  // namespace exit_code

// Entry point of the mlfft command line tool; subcommands build, verify,
// experiment and set.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mlfft
