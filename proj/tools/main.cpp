#include <iostream>

#include "knotforge/cli/commands.hpp"

int main(int argc, char** argv) { return knotforge::cli::run(argc, argv, std::cout, std::cerr); }
