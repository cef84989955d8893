#include <iostream>
#include <string>
#include <vector>

#include "siq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return siq::run_cli(args, std::cout, std::cerr);
}
