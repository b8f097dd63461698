#include <iostream>

#include "evostab/cli.hpp"

int main(int argc, char** argv) { return evostab::cli::run(argc, argv, std::cout, std::cerr); }
