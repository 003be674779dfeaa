#include "qcurve/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qcurve::cli::run(argc, argv, std::cout, std::cerr); }
