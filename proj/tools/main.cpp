#include <iostream>

#include "sumprod/cli.hpp"

int main(int argc, char** argv) { return sumprod::run_cli(argc, argv, std::cout, std::cerr); }
