#include "nhur/scenarios.hpp"

#include <array>
#include <cmath>

#include "nhur/errors.hpp"
#include "nhur/states.hpp"

namespace nhur {

Matrix polar_unitary(double x) {
    const double c = std::cos(2 * x), s = std::sin(2 * x);
    return Matrix{{c, s}, {s, -c}};
}

Matrix polar_positive(double x) { return Matrix{{-std::cos(2 * x), 0.0}, {0.0, 1.0}}; }

Problem build_example1(const Example1Config& cfg) {
    for (double t : {cfg.theta0, cfg.theta1, cfg.theta3, cfg.theta5, cfg.theta7}) {
        if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "example 1 angles must be finite");
    }
    Matrix a = polar_positive(cfg.theta3) * polar_unitary(cfg.theta1 - cfg.theta0);
    Matrix b = polar_positive(cfg.theta7) * polar_unitary(cfg.theta5 - cfg.theta0);
    StateVector psi{std::cos(2 * cfg.theta0), std::sin(2 * cfg.theta0)};
    return {std::move(a), std::move(b), std::move(psi), Metric::identity(2)};
}

std::string_view to_string(PtPhase p) noexcept { return p == PtPhase::Symmetric ? "symmetric" : "broken"; }

Matrix pt_hamiltonian(double gamma) {
    return Matrix{{Complex(0.0, gamma), 1.0}, {1.0, Complex(0.0, -gamma)}};
}

void check_pt_region(double gamma, PtPhase phase, const Tolerances& tol) {
    if (!std::isfinite(gamma)) throw Error(ErrorCode::NonFinite, "gamma must be finite");
    if (std::abs(1.0 - gamma * gamma) < tol.ep) {
        throw Error(ErrorCode::EpDegenerate,
                    "gamma = " + std::to_string(gamma) + " is at the exceptional point gamma^2 = 1; "
                    "eigenvectors coalesce and no metric exists");
    }
    if (phase == PtPhase::Symmetric && !(gamma * gamma < 1.0)) {
        throw Error(ErrorCode::PhaseMismatch, "symmetric phase requires gamma^2 < 1");
    }
    if (phase == PtPhase::Broken && !(gamma > 1.0)) {
        throw Error(ErrorCode::PhaseMismatch, "broken phase requires gamma > 1");
    }
}

EigenSystem pt_eigensystem(double gamma, PtPhase phase, const Tolerances& tol) {
    check_pt_region(gamma, phase, tol);
    if (phase == PtPhase::Symmetric) {
        // sin(theta) = gamma, cos(theta) = sqrt(1 - gamma^2)
        const double theta = std::asin(gamma);
        const double cos_t = std::sqrt(1.0 - gamma * gamma);
        const double c = 1.0 / std::sqrt(2.0 * cos_t);
        const Complex up = std::polar(1.0, theta / 2), down = std::polar(1.0, -theta / 2);
        StateVector e1{c * up, c * down};
        StateVector e2{I_UNIT * c * down, -I_UNIT * c * up};
        return eigensystem_from_right({cos_t, -cos_t}, {std::move(e1), std::move(e2)}, tol);
    }
    const double lam = std::sqrt(gamma * gamma - 1.0);
    const double c = 1.0 / std::sqrt(2.0 * gamma * lam - 2.0 * lam * lam);
    const double shift = gamma - lam;
    StateVector e1{c, Complex(0.0, -c * shift)};
    StateVector e2{Complex(0.0, c * shift), c};
    return eigensystem_from_right({Complex(0.0, lam), Complex(0.0, -lam)}, {std::move(e1), std::move(e2)}, tol);
}

Matrix pt_metric_closed_form(double gamma, PtPhase phase) {
    if (phase == PtPhase::Symmetric) {
        const double s = 1.0 / std::sqrt(1.0 - gamma * gamma);
        return Matrix{{s, Complex(0.0, -gamma * s)}, {Complex(0.0, gamma * s), s}};
    }
    const double s = 1.0 / std::sqrt(gamma * gamma - 1.0);
    return Matrix{{gamma * s, Complex(0.0, -s)}, {Complex(0.0, s), gamma * s}};
}

Problem build_example2(const Example2Config& cfg, const Tolerances& tol) {
    if (!std::isfinite(cfg.p) || !std::isfinite(cfg.alpha)) {
        throw Error(ErrorCode::NonFinite, "p and alpha must be finite");
    }
    const EigenSystem sys = pt_eigensystem(cfg.gamma, cfg.phase, tol);
    Metric g = metric_from_right_eigenvectors(sys, pt_hamiltonian(cfg.gamma), tol);

    Matrix a = cfg.phase == PtPhase::Symmetric ? pt_hamiltonian(cfg.gamma) : pt_hamiltonian(1.0 / cfg.gamma);
    Matrix b = sigma_y();
    for (const Matrix* x : {&a, &b}) {
        const auto chk = is_good_observable(*x, g, tol);
        if (!chk.good) {
            throw Error(ErrorCode::NotGoodObservable,
                        "example 2 observable is not good for the eigenframe metric (residual " +
                            std::to_string(chk.residual) + ")");
        }
    }

    const std::array<Complex, 2> weights = {1.0, cfg.p * std::polar(1.0, cfg.alpha)};
    StateVector psi = superposition_state(sys.right, weights, g);
    return {std::move(a), std::move(b), std::move(psi), std::move(g)};
}

bool ScenarioPoint::all_hold() const noexcept {
    if (error || evaluations.empty()) return false;
    for (const auto& e : evaluations)
        if (!e.holds) return false;
    return true;
}

std::vector<UrEvaluation> evaluate_problem(const Problem& prob, Formalism f,
                                           const std::optional<StateVector>& psi_perp, const Tolerances& tol) {
    if (f != Formalism::Plain) return evaluate_all(prob.a, prob.b, prob.psi, prob.metric, f, psi_perp, tol);

    const double n2 = prob.psi.norm() * prob.psi.norm();
    if (std::abs(n2 - 1.0) <= tol.norm) {
        return evaluate_all(prob.a, prob.b, prob.psi, prob.metric, f, psi_perp, tol);
    }
    const Metric dirac = Metric::identity(prob.psi.dim());
    return evaluate_all(prob.a, prob.b, g_normalize(prob.psi, dirac), prob.metric, f, psi_perp, tol);
}

double grid_node(double lo, double hi, std::size_t points, std::size_t k) {
    if (k + 1 == points) return hi;
    return lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(points - 1));
}

std::vector<ScenarioPoint> sweep(const ProblemBuilder& builder, double lo, double hi, std::size_t points,
                                 Formalism f, const Tolerances& tol) {
    if (points < 2) throw Error(ErrorCode::InvalidArgument, "a sweep needs at least 2 points");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw Error(ErrorCode::NonFinite, "sweep range must be finite");

    std::vector<ScenarioPoint> out(points);
    for (std::size_t k = 0; k < points; ++k) {
        ScenarioPoint& pt = out[k];
        pt.param = grid_node(lo, hi, points, k);
        try {
            pt.evaluations = evaluate_problem(builder(pt.param), f, std::nullopt, tol);
        } catch (const Error& e) {
            pt.error = e.what();
        }
    }
    return out;
}

} // namespace nhur
