#pragma once

#include <iosfwd>
#include <json.hpp>

#include "prony/prony_solver.hpp"

namespace prony {

// Index sets: JSON array of integer arrays, stored order.
nlohmann::json index_set_to_json(const IndexSet& s);
IndexSet index_set_from_json(const nlohmann::json& j, int dim, IndexSet::Order order);

// Polynomials: array of {"alpha": [...], "re": x, "im": y}.
nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j, int dim);

// Standalone polynomial file: {"s": dim, "terms": [...]}.
nlohmann::json polynomial_file_to_json(const Polynomial& p);
Polynomial polynomial_file_from_json(const nlohmann::json& j);

// Models: {"s": dim, "terms": [{"omega": [[re,im],...], "coeff": [...]}]}.
nlohmann::json model_to_json(const ExponentialSumModel& m);
ExponentialSumModel model_from_json(const nlohmann::json& j);

// Signals: CSV with header a1,...,as,re,im, one row per window point in order.
void write_signal_csv(std::ostream& out, const LatticeSignal& f);
LatticeSignal read_signal_csv(std::istream& in);

// Matrices: {"kind", "rows"/"row_labels", "cols", "data"} with data[i][j] = [re, im].
nlohmann::json matrix_to_json(const StructuredMatrix& m);

nlohmann::json variety_point_to_json(const VarietyPoint& p);
nlohmann::json rank_scan_to_json(const RankScan& r);
nlohmann::json report_to_json(const ReconstructionReport& r);
nlohmann::json factorization_to_json(const FactorizationResult& r);

}  // namespace prony
