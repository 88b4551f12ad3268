#include <iostream>

#include "polymorse/cli.hpp"

int main(int argc, char** argv) { return polymorse::run_cli(argc, argv, std::cout, std::cerr); }
