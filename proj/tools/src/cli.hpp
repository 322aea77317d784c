#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccrank::cli {

struct RunConfig {
  std::string group, command;
  std::string op, p, b, q, cert, a1, a2, bt, a, u, traces, out, report, route = "nullstellensatz", name;
  int n = 2, N = 1, k = 1, grid = 128;
  bool full = false, strict = false;
  std::uint64_t seed = 0x5EED;
  int cap = -1;
  double tol = 1e-8;
};

// exit 0 on a reached verdict, 2 on Undetermined, 1 on error
int run(const RunConfig& cfg);
int main(int argc, char** argv);

}  // namespace ccrank::cli
