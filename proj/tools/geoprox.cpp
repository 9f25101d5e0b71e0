#include <iostream>

#include "geoprox/cli.hpp"

int main(int argc, char** argv) { return geoprox::run_cli(argc, argv, std::cout, std::cerr); }
