#include <iostream>

#include "growthlab/cli/runner.hpp"

int main(int argc, char** argv) { return growthlab::cli::main_entry(argc, argv, std::cout, std::cerr); }
