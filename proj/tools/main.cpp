#include <iostream>

#include "cli/app.hpp"

int main(int argc, char** argv) { return cmm::cli::cli_main(argc, argv, std::cout, std::cerr); }
