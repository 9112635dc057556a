#include <iostream>

#include "nhur/cli.hpp"

int main(int argc, char** argv) { return nhur::cli::run(argc, argv, std::cout, std::cerr); }
