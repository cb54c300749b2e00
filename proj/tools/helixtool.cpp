#include <iostream>

#include "hx/cli.hpp"

int main(int argc, char** argv) { return hx::cli_run(argc, argv, std::cout, std::cerr); }
