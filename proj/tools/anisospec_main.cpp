#include "anisospec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return anisospec::run_cli(argc, argv, std::cout, std::cerr); }
