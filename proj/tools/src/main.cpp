#include <iostream>

#include <loglin_cli/commands.hpp>

int main(int argc, char** argv) { return loglin::cli::run(argc, argv, std::cout, std::cerr); }
