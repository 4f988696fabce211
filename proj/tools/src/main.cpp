#include <iostream>

#include "seccell_cli/cli.hpp"

int main(int argc, char** argv) { return seccell::cli::run_cli(argc, argv, std::cout, std::cerr); }
