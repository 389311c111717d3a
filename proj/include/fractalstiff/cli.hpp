#pragma once

#include <iosfwd>

namespace fractalstiff::cli {

// Full command driver, testable in-process. Returns the process exit code:
// 0 success, 1 numerical failure, 2 input/parse errors. Reports end with a
// single line beginning OK or FAIL.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fractalstiff::cli
