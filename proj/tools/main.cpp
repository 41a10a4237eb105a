#include <iostream>

#include "smallres/cli.hpp"

int main(int argc, char** argv) { return smallres::run_cli(argc, argv, std::cout, std::cerr); }
