#pragma once

#include <json.hpp>

#include "qndi/metrics.hpp"
#include "qndi/phase_space.hpp"
#include "qndi/wigner.hpp"

namespace qndi::serialize {

/// {"ordering": [names], "entries": [36 numbers, row-major]}
nlohmann::json matrix_to_json(const phase_space::SymplecticMatrix& m);
phase_space::SymplecticMatrix matrix_from_json(const nlohmann::json& j);

/// {"ordering": [names], "rows": ["x_A_out","p_A_out"], "entries": [12]}
nlohmann::json map_to_json(const phase_space::ConditionalAffineMap& m);

/// {"dim": d, "poly": [[[e0..e_{d-1}], coeff], ...], "A": [[..]], "b": [..],
///  "c": log-scale}
nlohmann::json state_to_json(const wigner::GaussPolyWigner& w);
wigner::GaussPolyWigner state_from_json(const nlohmann::json& j);

/// Flat {"q","ps","fidelity","negativity"}
nlohmann::json merit_to_json(const metrics::MeritReport& r);

}  // namespace qndi::serialize
