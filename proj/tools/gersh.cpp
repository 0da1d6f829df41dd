#include <iostream>

#include "gersh/cli.hpp"

int main(int argc, char** argv) { return gersh::run_cli(argc, argv, std::cout, std::cerr); }
