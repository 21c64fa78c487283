#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polybundle {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitValidation = 2,
  kExitTheorem = 3,
};

// Runs one command line (without the program name). A scene argument of "-"
// or none reads the scene from `in`.
int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace polybundle
