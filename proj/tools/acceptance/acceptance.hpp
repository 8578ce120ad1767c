#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace comatroid::acceptance {

struct Options {
  unsigned jobs = 0;
  std::uint64_t seed = 20240611;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string name;
  std::function<Outcome(const Options&)> run;
};

const std::vector<Criterion>& manifest();

struct Report {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the selected criteria (all when `ids` is empty). An exception inside a
/// criterion counts as a failure with its message as the detail.
std::vector<Report> run(const Options& options, const std::vector<int>& ids = {});

/// "PASS 3 rank-4 binary minimal census (1.2s): detail"
std::string format(const Report& r);

}  // namespace comatroid::acceptance
