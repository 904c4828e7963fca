#include <iostream>

#include "tileasm/cli.hpp"

int main(int argc, char** argv) { return tileasm::cli::run(argc, argv, std::cout, std::cerr); }
