#include "shadowdyn/certificate.hpp"

namespace shadowdyn {

Json Certificate::to_json() const {
  Json j = Json::object();
  j["kind"] = kind;
  j["pass"] = pass;
  j[bound_name] = bound;
  j["horizon"] = horizon;
  j["worst_index"] = worst_index;
  j["worst_value"] = worst_value;
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

}  // namespace shadowdyn
