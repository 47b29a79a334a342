#include <iostream>

#include "drmab/cli.hpp"

int main(int argc, char** argv) { return drmab::cli_dispatch(argc, argv, std::cout, std::cerr); }
