#include <iostream>

#include "qglab/cli.hpp"

int main(int argc, char** argv) { return qglab::cli_main(argc, argv, std::cout, std::cerr); }
