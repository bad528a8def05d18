#include "cli.hpp"

int main(int argc, char** argv) { return chyp::cli::run(argc, argv, std::cout, std::cerr); }
