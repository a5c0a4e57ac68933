#include <iostream>

#include "bagel/cli/commands.hpp"

int main(int argc, char** argv) { return bagel::cli::run(argc, argv, std::cout, std::cerr); }
