#include <iostream>
#include <string>
#include <vector>

#include "cellplan/cli.hpp"

int main(int argc, char** argv)
{
	std::vector<std::string> args(argv + 1, argv + argc);
	return cellplan::cli::run(args, std::cout, std::cerr);
}
