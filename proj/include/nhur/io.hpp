#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nhur/linalg.hpp"
#include "nhur/metric.hpp"
#include "nhur/relations.hpp"
#include "nhur/scenarios.hpp"

namespace nhur {

// 17 significant digits with '.' as the decimal point, independent of locale.
std::string format_double(double x);

// Column order of sweep CSV files:
//   <param>,
//   ur1_lhs,ur1_rhs,ur1_gap,ur1_holds,
//   ur2_lhs,ur2_rhs,ur2_gap,ur2_holds,
//   ur3_lhs,ur3_rhs,ur3_gap,ur3_holds,ur3_branch,
//   ur4_lhs,ur4_rhs,ur4_gap,ur4_holds,ur4_branch,ur4_degenerate,
//   error
// holds/degenerate are 1/0, branches are plus/minus, error is empty unless
// the point could not be evaluated (numeric fields are then "nan").
std::string sweep_csv_header(std::string_view param_name);
void write_sweep_csv(std::ostream& os, std::string_view param_name, const std::vector<ScenarioPoint>& points);

// Problem files: {"dim": n, "A": [[[re, im], ...], ...], "B": ..., "psi": [[re, im], ...],
//                 "G": optional matrix, "H": optional matrix, "formalism": "plain" | "gmetric" |
//                 "good_observable", "psi_perp": optional vector}
struct ProblemSpec {
    std::size_t dim = 0;
    Matrix a;
    Matrix b;
    StateVector psi;
    std::optional<Matrix> g;
    std::optional<Matrix> h;
    Formalism formalism = Formalism::GMetric;
    std::optional<StateVector> psi_perp;
};

// Throws Error(InvalidArgument) with "line L, column C" for malformed JSON and
// a JSON path for schema violations; NonFinite for nan/inf entries.
ProblemSpec parse_problem(std::string_view text);

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const StateVector& v);
nlohmann::json to_json(const UrEvaluation& e);
nlohmann::json to_json(const MetricReport& r);

nlohmann::json problem_to_json(const Problem& prob, Formalism f,
                               const std::optional<StateVector>& psi_perp = std::nullopt);

} // namespace nhur
