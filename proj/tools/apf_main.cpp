#include <iostream>

#include "apf/cli.hpp"

int main(int argc, char** argv) { return apf::cli::run(argc, argv, std::cout, std::cerr); }
