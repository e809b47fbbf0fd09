#include <iostream>

#include "mlfft/cli.hpp"

int main(int argc, char** argv) {
    return mlfft::run_cli(argc, argv, std::cout, std::cerr);
}
