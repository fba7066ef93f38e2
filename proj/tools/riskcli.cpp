#include "fhsrisk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fhsrisk::cli::run(argc, argv, std::cout, std::cerr); }
