#include "dirac_spectra/cli.hpp"

int main(int argc, char** argv) { return dirac_spectra::cli::run(argc, argv); }
