#include <iostream>
#include <string>
#include <vector>

#include "aucplan/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return aucplan::app::cli_run(args, std::cout, std::cerr);
}
