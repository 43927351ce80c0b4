#include <iostream>

#include "yoro_cli/cli.hpp"

int main(int argc, char** argv) { return yoro::cli::run(argc, argv, std::cout, std::cerr); }
