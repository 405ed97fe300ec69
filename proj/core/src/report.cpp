#include "macpoly/report.hpp"

namespace macpoly {

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j = {{"identity", r.identity}, {"inputs", r.inputs}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}};
  if (r.inconclusive) j["inconclusive"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json to_json(const NumericReport& r) {
  return {{"check", r.check},
          {"parameters", r.parameters},
          {"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

}  // namespace macpoly
