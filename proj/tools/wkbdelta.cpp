#include <iostream>

#include "wkbdelta/cli.hpp"

int main(int argc, char** argv) { return wkbdelta::run_cli(argc, argv, std::cout, std::cerr); }
