#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lozenge {

// Exit codes: 0 ok, 1 verification failure, 2 configuration error, 3 numeric failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lozenge
