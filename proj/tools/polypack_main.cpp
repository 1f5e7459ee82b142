#include "polypack/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return polypack::run_cli(argc, argv, std::cout, std::cerr);
}
