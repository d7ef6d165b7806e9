#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace remile::cli {

/// Runs one command line (argv[0] excluded). Returns the process exit status:
/// 0 success, 1 usage or validation error, 2 data error, 3 numerical error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace remile::cli
