#include <iostream>

#include "sqsdp/cli.hpp"

int main(int argc, char** argv) { return sqsdp::cli::run(argc, argv, std::cout, std::cerr); }
