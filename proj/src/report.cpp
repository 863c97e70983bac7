#include "gwplasma/report.hpp"

#include "gwplasma/serialize.hpp"

namespace gwplasma {

void Report::add_residual(std::uint32_t order, RationalFn r) {
  if (!r.is_zero()) {
    pass = false;
    if (!first_failure_order) first_failure_order = order;
  }
  residuals.push_back(std::move(r));
}

nlohmann::json report_to_json(const Report& r) {
  nlohmann::json residuals = nlohmann::json::array();
  for (const auto& f : r.residuals) residuals.push_back(ratfn_to_json(f));
  nlohmann::json out = {{"name", r.name}, {"pass", r.pass}, {"residuals", residuals}, {"details", r.details}};
  out["first_failure_order"] = r.first_failure_order ? nlohmann::json(*r.first_failure_order) : nlohmann::json();
  return out;
}

}  // namespace gwplasma
