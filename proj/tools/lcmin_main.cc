#include <iostream>

#include "lcmin/cli.h"

int main(int argc, char** argv) { return lcmin::cli::run(argc, argv, std::cout, std::cerr); }
