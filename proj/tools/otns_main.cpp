#include <iostream>

#include "otns/cli.hpp"

int main(int argc, char** argv) { return otns::cli::run(argc, argv, std::cout, std::cerr); }
