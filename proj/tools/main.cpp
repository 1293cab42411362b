#include <iostream>

#include "zerocell/cli.hpp"

int main(int argc, char** argv) { return zerocell::cli::run(argc, argv, std::cout, std::cerr); }
