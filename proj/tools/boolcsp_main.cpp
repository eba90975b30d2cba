#include "boolcsp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return boolcsp::run_cli(args, std::cout, std::cerr);
}
