// qcurve command line: subcommand dispatch, report assembly and exit codes.
//   0  every requested verdict passed
//   1  a verdict failed, or a module raised a domain/accuracy error
//   2  usage error
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcurve::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcurve::cli
