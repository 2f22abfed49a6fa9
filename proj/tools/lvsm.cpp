#include <iostream>

#include "lvsm/cli.hpp"

int main(int argc, char** argv) { return lvsm::run_cli(argc, argv, std::cout, std::cerr); }
