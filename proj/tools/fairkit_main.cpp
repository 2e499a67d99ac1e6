#include <iostream>
#include <string>
#include <vector>

#include "fairkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return fairkit::cli::run(args, std::cout, std::cerr);
}
