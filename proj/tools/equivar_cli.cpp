#include <iostream>
#include <string>
#include <vector>

#include "equivar/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return equivar::run_cli(args, std::cout, std::cerr);
}
