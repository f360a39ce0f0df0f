#include <iostream>

#include "dressgate_cli/commands.hpp"

int main(int argc, char** argv) { return dressgate::cli::run_cli(argc, argv, std::cout, std::cerr); }
