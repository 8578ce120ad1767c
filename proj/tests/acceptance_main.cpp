// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <cstdlib>
#include <iostream>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  comatroid::acceptance::Options options;
  if (argc > 1) options.jobs = static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10));
  bool pass = true;
  for (const auto& c : comatroid::acceptance::manifest()) {
    const auto reports = comatroid::acceptance::run(options, {c.id});
    std::cout << comatroid::acceptance::format(reports.front()) << std::endl;
    pass = pass && reports.front().pass;
  }
  return pass ? EXIT_SUCCESS : EXIT_FAILURE;
}
