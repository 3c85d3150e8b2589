// rabi_lab.cpp: command-line entry point; see rabi/cli.hpp for subcommands and exit codes.

#include <iostream>
#include <string>
#include <vector>

#include "rabi/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return rabi::cli::run(args, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "rabi_lab: " << e.what() << '\n';
        return 1;
    }
}
