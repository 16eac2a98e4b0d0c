#include "teamlogic/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return teamlogic::cli::run_cli(argc, argv, std::cout, std::cerr);
}
