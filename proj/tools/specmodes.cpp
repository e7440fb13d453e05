#include <iostream>

#include "specmodes/cli.hpp"

int main(int argc, char** argv) { return specmodes::cli::run(argc, argv, std::cout, std::cerr); }
