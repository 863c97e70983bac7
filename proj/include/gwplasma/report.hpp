#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwplasma/ratfn.hpp"

namespace gwplasma {

// Outcome of a verification. Exact checks fill `residuals` (index = order or
// N); numeric and observational checks put their figures in `details`.
struct Report {
  std::string name;
  bool pass = true;
  std::optional<std::uint32_t> first_failure_order;
  std::vector<RationalFn> residuals;
  nlohmann::json details = nlohmann::json::object();

  // Appends a residual and updates pass / first_failure_order.
  void add_residual(std::uint32_t order, RationalFn r);
};

// {"name", "pass", "first_failure_order": int|null, "residuals": [...], "details"}
nlohmann::json report_to_json(const Report& r);

}  // namespace gwplasma
