#pragma once

#include <stdexcept>
#include <string>

namespace dpp {

/// Bad user-supplied data: malformed files, out-of-range parameters,
/// priors that are not a distribution, unknown vertex ids.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Randomized generation could not satisfy its constraints within the
/// configured attempt cap.
struct generation_error : std::runtime_error {
  explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration exceeded its budget and aborted cleanly.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed; indicates a bug, not bad input.
struct contract_error : std::logic_error {
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dpp
