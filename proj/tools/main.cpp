#include <iostream>
#include <string>
#include <vector>

#include "chromcert/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chromcert::cli::run(std::move(args), std::cout, std::cerr);
}
