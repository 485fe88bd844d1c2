#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace partsmm::cli {

/// Exit codes: 0 success, 1 data or runtime error (a JSON error record is
/// written to `err`), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace partsmm::cli
