#include "spectra_svi/experiment/cli.hpp"

int main(int argc, char** argv) { return spectra_svi::experiment::CliMain(argc, argv); }
