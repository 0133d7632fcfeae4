#include <iostream>

#include "corrgraph/cli.hpp"

int main(int argc, char** argv) { return corrgraph::run_cli(argc, argv, std::cout, std::cerr); }
