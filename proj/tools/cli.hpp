#pragma once

#include <iosfwd>

namespace tsurf::cli {

// exit code 0 on success, 2 on domain errors, 1 on usage errors
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsurf::cli
