#pragma once

#include <iosfwd>

namespace ffconv::cli {

/// Entry point of the ffconv tool. Exit codes: 0 success, 1 failed
/// verification, 2 malformed input or usage, 3 mathematical domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffconv::cli
