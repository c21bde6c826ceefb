#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lftcf::cli {

/// Runs one command line (program name excluded); returns 0, 1 (domain error or failed suite) or 2 (usage).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lftcf::cli
