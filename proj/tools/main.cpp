#include <iostream>

#include "eprlat/cli.hpp"

int main(int argc, char** argv) { return eprlat::run(argc, argv, std::cout, std::cerr); }
