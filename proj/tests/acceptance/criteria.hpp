#pragma once

#include <functional>
#include <string>
#include <vector>

namespace saga::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

std::vector<Criterion> criteria();

}  // namespace saga::acceptance
