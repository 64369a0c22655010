#include "gbd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gbd::run_cli(argc, argv, std::cout, std::cerr); }
