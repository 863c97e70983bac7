#pragma once

#include "json.hpp"

#include "gwplasma/poly.hpp"
#include "gwplasma/ratfn.hpp"
#include "gwplasma/series.hpp"

namespace gwplasma {

// Terms as [{"exp": {"2": 1, "3": 2}, "coef": "7/24"}, ...] in descending
// grlex order; zero exponents are omitted.
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

// {"num": [...], "den": [...], "den_factors": [{"factor": [...], "exponent": k}]}.
// "den" is the expanded denominator; "den_factors" keeps the factored form.
// On input "den_factors" wins when present, otherwise "den" is one factor.
nlohmann::json ratfn_to_json(const RationalFn& f);
RationalFn ratfn_from_json(const nlohmann::json& j);

// {"order": T, "coeffs": [<ratfn>, ...]}
nlohmann::json series_to_json(const TruncSeries& s);

}  // namespace gwplasma
