#include <iostream>

#include "lr2sd/cli.hpp"

int main(int argc, char** argv) { return lr2sd::cli::run_cli(argc, argv, std::cout, std::cerr); }
