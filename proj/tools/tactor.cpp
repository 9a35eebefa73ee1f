#include <iostream>

#include "tactor/cli/run.hpp"

int main(int argc, char** argv) { return tactor::cli::run(argc, argv, std::cout, std::cerr); }
