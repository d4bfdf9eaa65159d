#include "ahprank/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ahprank::run_cli(argc, argv, std::cout, std::cerr); }
