#include <iostream>

#include "ebmeta/cli.hpp"

int main( int argc, char** argv )
{
    return ebmeta::cli::run( argc, argv, std::cout, std::cerr );
}
