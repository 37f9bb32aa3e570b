// Thin entry point: collect the arguments and dispatch.
#include <iostream>
#include <string>
#include <vector>

#include "qde/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qde::run_command(args, std::cout, std::cerr);
}
