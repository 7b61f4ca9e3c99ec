#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    const char* env = std::getenv("BILIAISON_STRICT");
    const bool strict_env = env != nullptr && std::string(env) == "1";
    std::vector<std::string> args(argv + 1, argv + argc);
    return biliaison::cli::run(args, std::cout, std::cerr, strict_env);
}
