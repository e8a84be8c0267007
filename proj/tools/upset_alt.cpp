#include <iostream>
#include <string>
#include <vector>

#include "upset_alt/api.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return upset_alt::cli_run(args, std::cout, std::cerr);
}
