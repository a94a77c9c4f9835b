#pragma once

#include <string>
#include <vector>

namespace dirac_spectra::cli {

// Full command-line front end; returns the process exit code. The vector
// overload takes the arguments without the program name, in natural order.
int run(int argc, const char* const* argv);
int run(std::vector<std::string> args);

}  // namespace dirac_spectra::cli
