#include <iostream>

#include "qdot/cli.hpp"

int main(int argc, char** argv)
{
    return qdot::cli::run(argc, argv, std::cout, std::cerr);
}
