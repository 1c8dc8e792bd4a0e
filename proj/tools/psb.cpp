#include <iostream>

#include "psb_cli.hpp"

int main(int argc, char** argv) { return psb::cli::run(argc, argv, std::cout, std::cerr); }
