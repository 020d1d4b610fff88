#include "rankzeta_cli.hpp"

int main(int argc, char** argv) { return rankzeta::cli::run(argc, argv, std::cout, std::cerr); }
