#include <iostream>
#include <string>
#include <vector>

#include "fracsch_tools/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fracsch::tools::cli_main(args, std::cout, std::cerr);
}
