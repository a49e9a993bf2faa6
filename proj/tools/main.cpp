#include <iostream>

#include "emch/cli.hpp"

int main(int argc, char** argv) { return emch::cli::run(argc, argv, std::cout, std::cerr); }
