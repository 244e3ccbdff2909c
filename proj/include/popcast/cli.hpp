#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace popcast {

/// Entry point of the `popcast` command. `args` excludes the program name.
/// Returns the process exit status: 0 success, 1 input or domain error,
/// 2 range or insufficient-data error.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace popcast
