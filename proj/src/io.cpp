#include "nhur/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "nhur/errors.hpp"

namespace nhur {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string sweep_csv_header(std::string_view param_name) {
    std::string h(param_name);
    for (int r = 1; r <= 4; ++r) {
        const std::string p = ",ur" + std::to_string(r) + "_";
        h += p + "lhs" + p + "rhs" + p + "gap" + p + "holds";
        if (r >= 3) h += p + "branch";
        if (r == 4) h += p + "degenerate";
    }
    h += ",error";
    return h;
}

namespace {

std::string csv_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out + "\"";
}

} // namespace

void write_sweep_csv(std::ostream& os, std::string_view param_name, const std::vector<ScenarioPoint>& points) {
    os << sweep_csv_header(param_name) << '\n';
    for (const auto& pt : points) {
        std::string line = format_double(pt.param);
        for (std::size_t r = 0; r < 4; ++r) {
            if (pt.error || pt.evaluations.size() != 4) {
                line += ",nan,nan,nan,0";
                if (r >= 2) line += ",none";
                if (r == 3) line += ",0";
                continue;
            }
            const UrEvaluation& e = pt.evaluations[r];
            line += ',' + format_double(e.lhs) + ',' + format_double(e.rhs) + ',' + format_double(e.gap) + ',' +
                    (e.holds ? '1' : '0');
            if (r >= 2) line += ',' + std::string(to_string(e.branch));
            if (r == 3) line += std::string(",") + (e.degenerate ? '1' : '0');
        }
        line += ',';
        if (pt.error) line += csv_escape(*pt.error);
        os << line << '\n';
    }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + what);
}

Complex parse_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        schema_error(path, "expected a [re, im] pair of numbers");
    }
    const double re = j[0].get<double>(), im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) throw Error(ErrorCode::NonFinite, path + ": non-finite number");
    return {re, im};
}

StateVector parse_vector(const json& j, std::size_t dim, const std::string& path) {
    if (!j.is_array() || j.size() != dim) schema_error(path, "expected an array of " + std::to_string(dim) + " entries");
    std::vector<Complex> amps;
    amps.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) amps.push_back(parse_complex(j[i], path + "[" + std::to_string(i) + "]"));
    return StateVector(std::move(amps));
}

Matrix parse_matrix(const json& j, std::size_t dim, const std::string& path) {
    if (!j.is_array() || j.size() != dim) schema_error(path, "expected " + std::to_string(dim) + " rows");
    std::vector<Complex> data;
    data.reserve(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != dim) schema_error(rp, "expected " + std::to_string(dim) + " columns");
        for (std::size_t c = 0; c < dim; ++c) data.push_back(parse_complex(j[r][c], rp + "[" + std::to_string(c) + "]"));
    }
    return Matrix(dim, std::move(data));
}

} // namespace

ProblemSpec parse_problem(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorCode::InvalidArgument,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
    } catch (const json::out_of_range& e) {
        throw Error(ErrorCode::NonFinite, std::string("number out of range: ") + e.what());
    }
    if (!j.is_object()) schema_error("$", "expected an object");

    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
        schema_error("$.dim", "expected a positive integer");
    }
    ProblemSpec spec;
    spec.dim = j["dim"].get<std::size_t>();
    for (const char* key : {"A", "B", "psi"}) {
        if (!j.contains(key)) schema_error(std::string("$.") + key, "missing");
    }
    spec.a = parse_matrix(j["A"], spec.dim, "$.A");
    spec.b = parse_matrix(j["B"], spec.dim, "$.B");
    spec.psi = parse_vector(j["psi"], spec.dim, "$.psi");
    if (j.contains("G") && !j["G"].is_null()) spec.g = parse_matrix(j["G"], spec.dim, "$.G");
    if (j.contains("H") && !j["H"].is_null()) spec.h = parse_matrix(j["H"], spec.dim, "$.H");
    if (j.contains("psi_perp") && !j["psi_perp"].is_null()) {
        spec.psi_perp = parse_vector(j["psi_perp"], spec.dim, "$.psi_perp");
    }
    if (j.contains("formalism")) {
        if (!j["formalism"].is_string()) schema_error("$.formalism", "expected a string");
        const auto f = parse_formalism(j["formalism"].get<std::string>());
        if (!f) schema_error("$.formalism", "expected plain, gmetric or good_observable");
        spec.formalism = *f;
    } else {
        spec.formalism = spec.g ? Formalism::GMetric : Formalism::Plain;
    }
    return spec;
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const StateVector& v) {
    json out = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) out.push_back({v[i].real(), v[i].imag()});
    return out;
}

json to_json(const UrEvaluation& e) {
    return {{"relation", to_string(e.relation)}, {"formalism", to_string(e.formalism)},
            {"branch", to_string(e.branch)},     {"lhs", e.lhs},
            {"rhs", e.rhs},                      {"gap", e.gap},
            {"holds", e.holds},                  {"degenerate", e.degenerate}};
}

json to_json(const MetricReport& r) {
    json out = {{"hermitian", r.hermitian},
                {"positive_definite", r.positive_definite},
                {"min_eigenvalue", r.min_eigenvalue}};
    out["stationarity_residual"] = r.stationarity_residual ? json(*r.stationarity_residual) : json(nullptr);
    return out;
}

json problem_to_json(const Problem& prob, Formalism f, const std::optional<StateVector>& psi_perp) {
    json out = {{"dim", prob.psi.dim()},
                {"A", to_json(prob.a)},
                {"B", to_json(prob.b)},
                {"psi", to_json(prob.psi)},
                {"formalism", to_string(f)}};
    if (prob.metric.provenance() != Provenance::Identity) out["G"] = to_json(prob.metric.matrix());
    if (psi_perp) out["psi_perp"] = to_json(*psi_perp);
    return out;
}

} // namespace nhur
