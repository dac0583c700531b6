#include <iostream>

#include "one21/cli.hpp"

int main(int argc, char** argv) {
    return one21::cli::run(argc, argv, std::cout, std::cerr);
}
