#pragma once

#include <ostream>

namespace drmab {

// Entry point of the drmab command line tool. Returns the process exit code:
// 0 success, 1 configuration or validation error, 2 I/O error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drmab
