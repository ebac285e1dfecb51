#include <iostream>

#include "ordlab/cli.hpp"

int main(int argc, char** argv) { return ordlab::run(argc, argv, std::cout, std::cerr); }
