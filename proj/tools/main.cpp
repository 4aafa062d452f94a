#include <iostream>

#include "mero/cli.hpp"

int main(int argc, char** argv)
{
    return mero::cli::run_cli(argc, argv, std::cout, std::cerr);
}
