// Acceptance run: one PASS/FAIL line per criterion. Arguments select
// criteria by name; with none, all of them run.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"

int main(int argc, char** argv) {
  using saga::acceptance::Criterion;
  const std::vector<Criterion> all = saga::acceptance::criteria();
  std::vector<std::string> only(argv + 1, argv + argc);

  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    saga::acceptance::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.1fs", secs);
    std::cout << (out.pass ? "PASS " : "FAIL ") << c.name << " (" << elapsed << "): " << out.detail << std::endl;
    failed += out.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
