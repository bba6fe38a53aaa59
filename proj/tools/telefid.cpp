#include <iostream>

#include "telefid/cli.hpp"

int main(int argc, char** argv)
{
    return telefid::run_cli(argc, argv, std::cout, std::cerr);
}
