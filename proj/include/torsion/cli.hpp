#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torsion {

// Parses and executes one command line.  Exit code contract: 0 for conclusive
// verdicts and valid certificates, 2 for inconclusive verdicts or reported
// violations, 1 for input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace torsion
