#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace macpoly {

// Outcome of an exact identity check.
struct VerificationReport {
  std::string identity;
  nlohmann::json inputs;
  std::string lhs;
  std::string rhs;
  bool equal = false;
  bool inconclusive = false;  // specialization hit a vanishing denominator
  std::string note;
};

nlohmann::json to_json(const VerificationReport& r);

// Outcome of a floating-point check.
struct NumericReport {
  std::string check;
  nlohmann::json parameters;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

nlohmann::json to_json(const NumericReport& r);

}  // namespace macpoly
