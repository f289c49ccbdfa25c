#include <iostream>

#include "osrc/cli_bench.hpp"

int main(int argc, char **argv)
{
  return osrc::run(argc, argv, std::cout, std::cerr);
}
