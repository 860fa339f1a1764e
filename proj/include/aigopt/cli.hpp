#pragma once

// Command-line surface: train / greedy / script / random / stats / compare.

#include <string>
#include <vector>

namespace aigopt::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_input = 2;
inline constexpr int exit_internal = 3;

/*! \brief Runs one command line (without the program name); returns the exit code. */
int run_command( const std::vector<std::string>& args );

int main_entry( int argc, char** argv );

} // namespace aigopt::cli
