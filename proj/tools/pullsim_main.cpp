#include <iostream>

#include "pullsim/cli.hpp"

int main(int argc, char** argv) { return pullsim::run_cli(argc, argv, std::cout, std::cerr); }
