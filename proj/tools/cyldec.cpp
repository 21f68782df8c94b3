#include "cyldec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cyldec::run_cli(argc, argv, std::cout, std::cerr); }
