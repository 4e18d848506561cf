#include "ctfpack/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return ctfpack::cli::run({argv, argv + argc}, std::cin, std::cout, std::cerr);
}
