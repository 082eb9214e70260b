#include "sirank/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sirank::run_cli(argc, argv, std::cout, std::cerr); }
