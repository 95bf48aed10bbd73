#include <iostream>
#include <variant>

#include "weylcheck/config.hpp"
#include "weylcheck/run.hpp"

int main(int argc, char** argv) {
  auto parsed = weylcheck::parse_command_line(argc, argv, std::cout, std::cerr);
  if (const int* status = std::get_if<int>(&parsed)) return *status;
  return weylcheck::run(std::get<weylcheck::RunConfig>(parsed), std::cerr);
}
