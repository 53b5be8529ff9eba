#include <iostream>

#include "milnor/cli.hpp"

int main(int argc, char** argv) { return milnor::run_cli(argc, argv, std::cout, std::cerr); }
