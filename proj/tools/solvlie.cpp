#include <iostream>

#include "solvlie/cli.hpp"

int main(int argc, char** argv) { return solvlie::run_cli(argc, argv, std::cout, std::cerr); }
