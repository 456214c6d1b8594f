#include "cesaro/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return cesaro::run_cli(argc, argv, std::cout, std::cerr);
}
