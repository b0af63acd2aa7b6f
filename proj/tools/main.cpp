#include <iostream>

#include "reliaforge/cli.hpp"

int main(int argc, char** argv) { return reliaforge::runCli(argc, argv, std::cout, std::cerr); }
