#include <iostream>

#include "thimble/cli.hpp"

int main(int argc, char** argv)
{
    return thimble::cli::run(argc, argv, {std::cout, std::cerr});
}
