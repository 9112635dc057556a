#include "nhur/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nhur/errors.hpp"
#include "nhur/io.hpp"
#include "nhur/metric.hpp"
#include "nhur/relations.hpp"
#include "nhur/scenarios.hpp"
#include "nhur/states.hpp"

namespace nhur::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Tolerances tolerances_from_env() {
    Tolerances tol;
    if (const char* env = std::getenv("NHUR_TOLERANCE_UR"); env && *env) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !std::isfinite(v) || v < 0.0) {
            throw UsageError(std::string("NHUR_TOLERANCE_UR must be a non-negative number, got '") + env + "'");
        }
        tol.ur = v;
    }
    return tol;
}

Formalism formalism_flag(const std::string& s) {
    const auto f = parse_formalism(s);
    if (!f) throw UsageError("unknown formalism '" + s + "' (plain, gmetric, good_observable)");
    return *f;
}

std::optional<PtPhase> phase_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "symmetric") return PtPhase::Symmetric;
    if (s == "broken") return PtPhase::Broken;
    throw UsageError("unknown phase '" + s + "' (symmetric, broken)");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

// Summary lines for a sweep and the exit code it implies.
int summarize(std::ostream& os, std::string_view name, std::string_view param,
              const std::vector<ScenarioPoint>& pts) {
    std::size_t errors = 0, violations = 0;
    for (const auto& pt : pts) {
        if (pt.error) ++errors;
        else
            for (const auto& e : pt.evaluations) violations += e.holds ? 0 : 1;
    }
    os << name << ": " << pts.size() << " points, " << param << " in [" << format_double(pts.front().param) << ", "
       << format_double(pts.back().param) << "]\n";
    for (std::size_t r = 0; r < 4; ++r) {
        double best = std::numeric_limits<double>::infinity();
        double where = std::nan("");
        for (const auto& pt : pts) {
            if (pt.error || pt.evaluations.size() != 4) continue;
            if (pt.evaluations[r].gap < best) {
                best = pt.evaluations[r].gap;
                where = pt.param;
            }
        }
        os << "  UR" << (r + 1) << " min gap ";
        if (std::isfinite(best)) os << format_double(best) << " at " << param << "=" << format_double(where) << '\n';
        else os << "n/a\n";
    }
    if (errors) {
        const auto first = std::find_if(pts.begin(), pts.end(), [](const ScenarioPoint& p) { return p.error; });
        os << "  " << errors << " point(s) could not be evaluated; first: " << *first->error << '\n';
    }
    if (violations) {
        os << "result: " << violations << " violation(s)\n";
        return kViolation;
    }
    if (errors) {
        os << "result: evaluation errors\n";
        return kUsageError;
    }
    os << "result: all inequalities hold\n";
    return kAllHold;
}

int emit_sweep(std::ostream& out, std::ostream& err, const std::string& out_path, std::string_view name,
               std::string_view param, const std::vector<ScenarioPoint>& pts) {
    std::ostringstream csv;
    write_sweep_csv(csv, param, pts);
    if (out_path.empty()) {
        out << csv.str();
        return summarize(err, name, param, pts);
    }
    write_text(out_path, csv.str());
    return summarize(out, name, param, pts);
}

int check_command(std::ostream& out, std::ostream& err, const std::string& in_path, const std::string& out_path,
                  const Tolerances& tol) {
    std::ifstream f(in_path, std::ios::binary);
    if (!f) {
        err << "check: cannot open '" << in_path << "'\n";
        return kUsageError;
    }
    std::stringstream buf;
    buf << f.rdbuf();

    ProblemSpec spec;
    try {
        spec = parse_problem(buf.str());
    } catch (const Error& e) {
        err << "check: " << in_path << ": " << e.what() << '\n';
        return kUsageError;
    }

    json report = {{"dim", spec.dim}, {"formalism", to_string(spec.formalism)}};
    int code = kAllHold;
    auto finish = [&]() {
        report["exit_code"] = code;
        const std::string text = report.dump(2) + "\n";
        if (out_path.empty()) out << text;
        else write_text(out_path, text);
        return code;
    };

    const Matrix g_matrix = spec.g ? *spec.g : Matrix::identity(spec.dim);
    const MetricReport mrep = validate_metric(g_matrix, spec.h, tol);
    report["metric"] = to_json(mrep);
    report["metric"]["provenance"] = to_string(spec.g ? Provenance::Explicit : Provenance::Identity);
    if (!mrep.valid()) {
        report["error"] = "metric is not Hermitian positive definite";
        err << "check: metric is not Hermitian positive definite\n";
        code = kUsageError;
        return finish();
    }
    const Metric metric = spec.g ? Metric::from_matrix(*spec.g, spec.h, tol) : Metric::identity(spec.dim);

    const auto ga = is_good_observable(spec.a, metric, tol);
    const auto gb = is_good_observable(spec.b, metric, tol);
    report["good_observable"] = {{"A", {{"good", ga.good}, {"residual", ga.residual}}},
                                 {"B", {{"good", gb.good}, {"residual", gb.residual}}}};

    Problem prob{spec.a, spec.b, spec.psi, metric};
    bool renormalized = false;
    const Metric& norm_metric = spec.formalism == Formalism::Plain ? Metric::identity(spec.dim) : metric;
    if (std::abs(metric_norm_squared(prob.psi, norm_metric) - 1.0) > tol.norm) {
        renormalized = true;
        if (spec.formalism != Formalism::Plain) prob.psi = g_normalize(prob.psi, metric);
    }
    report["psi_renormalized"] = renormalized;

    try {
        const auto evals = evaluate_problem(prob, spec.formalism, spec.psi_perp, tol);
        json arr = json::array();
        bool all = true;
        for (const auto& e : evals) {
            arr.push_back(to_json(e));
            all = all && e.holds;
        }
        report["evaluations"] = std::move(arr);
        report["all_hold"] = all;
        report["error"] = nullptr;
        code = all ? kAllHold : kViolation;
    } catch (const Error& e) {
        report["evaluations"] = json::array();
        report["all_hold"] = false;
        report["error"] = e.what();
        err << "check: " << e.what() << '\n';
        code = kUsageError;
    }
    return finish();
}

std::string fmt_complex(Complex z) {
    std::ostringstream os;
    os << std::showpos << std::setprecision(10) << z.real() << z.imag() << "i";
    return os.str();
}

int metric_command(std::ostream& out, double gamma, std::optional<PtPhase> phase, const Tolerances& tol) {
    const PtPhase ph = phase.value_or(gamma * gamma < 1.0 ? PtPhase::Symmetric : PtPhase::Broken);
    const Matrix h = pt_hamiltonian(gamma);
    const Metric g = metric_from_right_eigenvectors(pt_eigensystem(gamma, ph, tol), h, tol);
    const Matrix& gm = g.matrix();
    const Matrix closed = pt_metric_closed_form(gamma, ph);

    out << "H(gamma) with gamma = " << format_double(gamma) << ", phase " << to_string(ph) << '\n';
    const EigenSystem sys = eig2(h, tol);
    out << "eigenvalues of H: " << fmt_complex(sys.values[0]) << ", " << fmt_complex(sys.values[1]) << '\n';
    out << "G (eigenframe):\n";
    for (std::size_t r = 0; r < 2; ++r) out << "  [" << fmt_complex(gm(r, 0)) << ", " << fmt_complex(gm(r, 1)) << "]\n";
    out << "distance to closed form: " << format_double(distance(gm, closed)) << '\n';
    const auto eigs = hermitian_eigenvalues(gm);
    out << "eigenvalues of G: " << format_double(eigs[0]) << ", " << format_double(eigs[1]) << '\n';
    const MetricReport& rep = g.report();
    out << "hermitian: " << (rep.hermitian ? "yes" : "no") << '\n';
    out << "positive definite: " << (rep.positive_definite ? "yes" : "no") << '\n';
    out << "stationarity residual ||GH - H^dagger G||_F: " << format_double(rep.stationarity_residual.value_or(0.0))
        << '\n';
    out << "good observables (X^dagger G = G X):\n";
    const std::pair<const char*, Matrix> table[] = {{"H(gamma)", h},
                                                    {"H(1/gamma)", pt_hamiltonian(1.0 / gamma)},
                                                    {"sigma_x", sigma_x()},
                                                    {"sigma_y", sigma_y()},
                                                    {"sigma_z", sigma_z()}};
    for (const auto& [name, x] : table) {
        const auto chk = is_good_observable(x, g, tol);
        out << "  " << std::left << std::setw(11) << name << (chk.good ? "good    " : "not good")
            << "  residual " << format_double(chk.residual) << '\n';
    }
    return kAllHold;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sum uncertainty relations for non-Hermitian operators", "nhur"};
    app.require_subcommand(1);

    std::size_t points = 721;
    std::string out_path, formalism_name, phase_name, in_path;
    Example1Config ex1;
    double lo1 = 0.0, hi1 = std::numbers::pi;

    auto* c1 = app.add_subcommand("example1", "Sweep the polar-decomposition example over theta0, write CSV");
    c1->add_option("--points", points, "Grid points (>= 2)")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    c1->add_option("--out", out_path, "CSV output path (stdout if omitted)");
    c1->add_option("--formalism", formalism_name, "plain | gmetric | good_observable")->default_str("plain");
    c1->add_option("--from", lo1, "Sweep start (radians)");
    c1->add_option("--to", hi1, "Sweep end (radians)");
    c1->add_option("--theta1", ex1.theta1);
    c1->add_option("--theta3", ex1.theta3);
    c1->add_option("--theta5", ex1.theta5);
    c1->add_option("--theta7", ex1.theta7);

    std::optional<double> gamma_opt, p_opt;
    auto* c2 = app.add_subcommand("example2", "Sweep the PT-symmetric dimer example over alpha, write CSV");
    c2->add_option("--phase", phase_name, "symmetric | broken")->default_str("symmetric");
    c2->add_option("--gamma", gamma_opt, "Non-Hermiticity (default 0.9 symmetric, 1.2 broken)");
    c2->add_option("--p", p_opt, "Superposition weight (default 0.5 symmetric, 1.5 broken)");
    c2->add_option("--points", points, "Grid points (>= 2)")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    c2->add_option("--formalism", formalism_name, "plain | gmetric | good_observable")->default_str("good_observable");
    c2->add_option("--out", out_path, "CSV output path (stdout if omitted)");

    auto* c3 = app.add_subcommand("check", "Evaluate a problem file and emit a JSON report");
    c3->add_option("--input", in_path, "Problem JSON")->required();
    c3->add_option("--out", out_path, "Report path (stdout if omitted)");

    double metric_gamma = 0.0;
    auto* c4 = app.add_subcommand("metric", "Print eigenframe-metric diagnostics for H(gamma)");
    c4->add_option("--gamma", metric_gamma, "Non-Hermiticity")->required();
    c4->add_option("--phase", phase_name, "symmetric | broken (inferred from gamma if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kAllHold : kUsageError;
    }

    try {
        const Tolerances tol = tolerances_from_env();
        if (*c1) {
            const Formalism f = formalism_flag(formalism_name.empty() ? "plain" : formalism_name);
            const auto pts = sweep(
                [&](double t) {
                    Example1Config cfg = ex1;
                    cfg.theta0 = t;
                    return build_example1(cfg);
                },
                lo1, hi1, points, f, tol);
            return emit_sweep(out, err, out_path, "example1", "theta0", pts);
        }
        if (*c2) {
            const PtPhase ph = phase_flag(phase_name.empty() ? "symmetric" : phase_name).value();
            Example2Config base =
                ph == PtPhase::Symmetric ? Example2Config::symmetric_defaults() : Example2Config::broken_defaults();
            if (gamma_opt) base.gamma = *gamma_opt;
            if (p_opt) base.p = *p_opt;
            // Reject bad regions up front rather than as per-point failures.
            check_pt_region(base.gamma, base.phase, tol);
            const Formalism f = formalism_flag(formalism_name.empty() ? "good_observable" : formalism_name);
            const auto pts = sweep(
                [&](double a) {
                    Example2Config cfg = base;
                    cfg.alpha = a;
                    return build_example2(cfg, tol);
                },
                0.0, 2 * std::numbers::pi, points, f, tol);
            return emit_sweep(out, err, out_path, "example2", "alpha", pts);
        }
        if (*c3) return check_command(out, err, in_path, out_path, tol);
        if (*c4) return metric_command(out, metric_gamma, phase_flag(phase_name), tol);
    } catch (const UsageError& e) {
        err << "nhur: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "nhur: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "nhur: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

} // namespace nhur::cli
