#include <iostream>

#include "nxmds/cli.hpp"

int main(int argc, char** argv) { return nxmds::cli::run(argc, argv, std::cout, std::cerr); }
