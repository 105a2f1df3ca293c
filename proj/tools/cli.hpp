#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sahlq::cli {

// Runs one command line (without the program name) and writes its report to
// `out`. Returns 0 when a verdict was computed, 1 when the checked property
// fails, 2 on usage or input errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sahlq::cli
