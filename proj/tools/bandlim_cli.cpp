#include <iostream>

#include "bandlim/cli.hpp"

int main(int argc, char** argv) { return bandlim::run_cli(argc, argv, std::cout, std::cerr); }
