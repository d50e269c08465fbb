#include <iostream>

#include "ldmcap/cli.hpp"

int main(int argc, char** argv) { return ldmcap::cli::run(argc, argv, std::cout, std::cerr); }
