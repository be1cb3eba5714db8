#include <iostream>

#include "pgf/cli.hpp"

int main(int argc, char** argv) { return pgf::cli::run(argc, argv, std::cout, std::cerr); }
