#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace shadowdyn {

using Json = nlohmann::json;

/// Machine-checkable record that a claimed bound was (or was not) verified
/// to a stated horizon. `bound` is the tolerance the claim was checked
/// against; its JSON key is `bound_name` ("eps" for shadowing, "delta" for
/// pseudo-orbit validation).
struct Certificate {
  std::string kind;
  bool pass = false;
  std::string bound_name = "eps";
  double bound = 0.0;
  std::int64_t horizon = 0;
  std::int64_t worst_index = 0;
  double worst_value = 0.0;
  Json extra = Json::object();

  Json to_json() const;
};

/// A verified mathematical failure: a precondition the data does not meet, a
/// witness or shadow that could not be produced, or a check that came out
/// negative where the caller demanded success. Carries the diagnostic record.
class DynamicsError : public std::runtime_error {
 public:
  DynamicsError(const std::string& what, Certificate cert) : std::runtime_error(what), cert_(std::move(cert)) {}
  const Certificate& certificate() const { return cert_; }

 private:
  Certificate cert_;
};

}  // namespace shadowdyn
