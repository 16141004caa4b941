#include "netstab/error.hpp"

namespace netstab {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration:";
  for (const auto& p : problems) {
    out += "\n  ";
    out += p;
  }
  return out;
}

}  // namespace

DefinitenessError::DefinitenessError(std::size_t pivot, double value)
    : Error("matrix is not positive definite: pivot " + std::to_string(pivot) +
            " is " + std::to_string(value)),
      pivot_(pivot),
      value_(value) {}

DegenerateError::DegenerateError(std::size_t variable, const std::string& what)
    : Error(what), variable_(variable) {}

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

}  // namespace netstab
