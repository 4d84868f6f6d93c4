#include "stokeslab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return stokeslab::run_cli(argc, argv, std::cout, std::cerr); }
