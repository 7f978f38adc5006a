#pragma once

#include <string>

#include <json.hpp>

#include "pntomo/fock.hpp"
#include "pntomo/gaussian_state.hpp"
#include "pntomo/positivity.hpp"

namespace pntomo {

using Json = nlohmann::ordered_json;

/// State schema: {"modes": N, "mean_q": [...], "mean_p": [...], "sigma": [[...]]}
/// with sigma in (p-block, q-block) order and an optional "label". Shape
/// violations raise SchemaError naming the offending field.
GaussianState state_from_json(const Json& doc);
GaussianState load_state_file(const std::string& path);
Json state_to_json(const GaussianState& state, const std::string& label = "");

Json validity_report_to_json(const ValidityReport& report);
Json positivity_report_to_json(const PositivityReport& report);

/// Complex values serialize as two-element [re, im] arrays.
Json complex_to_json(std::complex<double> z);

/// Density matrix as nested arrays of [re, im] pairs plus shape fields.
Json fock_matrix_to_json(const FockMatrix& rho);

}  // namespace pntomo
