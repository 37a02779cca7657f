#include <iostream>

#include "fastgabor/tools/cli.hpp"

int main(int argc, char** argv) {
    return fastgabor::tools::run(argc, argv, std::cout, std::cerr);
}
