#include <iostream>

#include "orsched/cli.hpp"

int main(int argc, char** argv) { return orsched::cli::run(argc, argv, std::cout, std::cerr); }
