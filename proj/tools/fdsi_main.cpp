#include <iostream>

#include "fdsi/cli.hpp"

int main(int argc, char** argv) { return fdsi::cli::run_cli(argc, argv, std::cout, std::cerr); }
