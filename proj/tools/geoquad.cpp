#include "geoquad/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return geoquad::cli::run(argc, argv, std::cout, std::cerr); }
