#include <iostream>

#include "hva/cli.hpp"

int main(int argc, char** argv) { return hva::cli::run(argc, argv, std::cout, std::cerr); }
