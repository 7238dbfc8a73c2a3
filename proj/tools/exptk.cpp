#include "exptk/cli.hpp"

int main(int argc, char** argv) { return exptk::cli::run(argc, argv); }
