#include "cli.hpp"

int main(int argc, char** argv) { return edgeconn::cli::run(argc, argv, std::cout, std::cerr); }
