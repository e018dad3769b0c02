#include <iostream>

#include "refinv/cli.hpp"

int main(int argc, char** argv) { return refinv::run_cli(argc, argv, std::cout, std::cerr); }
