#include <iostream>
#include <string>
#include <vector>

#include "prime_moduli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return prime_moduli::cli::run(std::move(args), std::cout, std::cerr);
}
