#include <iostream>

#include "caa/cli.hpp"

int main(int argc, char** argv) { return caa::cli_main(argc, argv, std::cout, std::cerr); }
