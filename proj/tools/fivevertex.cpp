#include <iostream>

#include "fivevertex/cli/cli.hpp"

int main(int argc, char** argv) { return fv::cli::run_cli(argc, argv, std::cout, std::cerr); }
