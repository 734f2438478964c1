#include <iostream>
#include <string>
#include <vector>

#include "mums/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mums::cli::run_command(args, std::cout, std::cerr);
}
