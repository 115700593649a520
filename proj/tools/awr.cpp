#include <iostream>

#include "awr/cli.hpp"

int main(int argc, char** argv) {
    return awr::cli::main_entry(argc, argv, std::cout, std::cerr);
}
