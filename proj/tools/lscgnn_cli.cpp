#include <iostream>

#include "lsc/harness/cli.hpp"

int main(int argc, char** argv) { return lsc::run_cli(argc, argv, std::cout, std::cerr); }
