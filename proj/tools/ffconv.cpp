#include <iostream>

#include "ffconv/cli.hpp"

int main(int argc, char** argv) { return ffconv::cli::run(argc, argv, std::cout, std::cerr); }
