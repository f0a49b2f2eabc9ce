#pragma once

#include "json.hpp"
#include "mvgamma/distributions.hpp"
#include "mvgamma/monotonicity.hpp"

namespace mvg {

// Canonical matrix schema: {"dim": m, "rows": [[...], ...]}. Loading
// validates squareness and strict symmetry. A bare array of rows, a bare
// [x] pair-list, or a plain number (1x1) are also accepted on input.
nlohmann::json matrix_to_json(const SymMatrix& m);
SymMatrix matrix_from_json(const nlohmann::json& j);

// Partition schema: {"dim": m, "parts": [matrix, ...]}; the complement is
// always rederived as I - sum(parts). A bare array of matrices also parses.
nlohmann::json partition_to_json(const MatrixPartition& partition);
MatrixPartition partition_from_json(const nlohmann::json& j);

// Q instance schema: {"m": ..., "n": ..., "alpha": [...], "partition": ...};
// "m" is optional (the partition fixes it) but must agree when present.
nlohmann::json instance_to_json(const QInstance& inst);
QInstance instance_from_json(const nlohmann::json& j);

DirichletParams dirichlet_params_from_json(const nlohmann::json& j);
MultinomialParams multinomial_params_from_json(const nlohmann::json& j);

}  // namespace mvg
