#include <iostream>

#include "ldlab/cli.hpp"

int main(int argc, char** argv) {
    return ldlab::cli_main(argc, argv, std::cout, std::cerr);
}
