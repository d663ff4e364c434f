#include <iostream>

#include "crackctl/cli.hpp"

int main(int argc, char** argv) { return crackctl::run_cli(argc, argv, std::cout, std::cerr); }
