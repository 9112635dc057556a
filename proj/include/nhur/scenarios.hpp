#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nhur/linalg.hpp"
#include "nhur/metric.hpp"
#include "nhur/relations.hpp"
#include "nhur/tolerances.hpp"

namespace nhur {

// One evaluable instance: two operators, a state and the metric it lives in.
struct Problem {
    Matrix a;
    Matrix b;
    StateVector psi;
    Metric metric;
};

// Example 1: real non-Hermitian operators assembled from polar parts
// A = S_A U_A, B = S_B U_B (wave-plate angles), swept over the state angle.
struct Example1Config {
    double theta0 = 0.0;
    double theta1 = std::numbers::pi / 4;
    double theta3 = std::numbers::pi / 3;
    double theta5 = std::numbers::pi / 4;
    double theta7 = 3 * std::numbers::pi / 4;
};

// Reflection-type unitary [[cos 2x, sin 2x], [sin 2x, -cos 2x]].
Matrix polar_unitary(double x);
// diag(-cos 2x, 1)
Matrix polar_positive(double x);

Problem build_example1(const Example1Config& cfg);

enum class PtPhase { Symmetric, Broken };

std::string_view to_string(PtPhase p) noexcept;

struct Example2Config {
    double gamma = 0.9;
    double p = 0.5;
    double alpha = 0.0;
    PtPhase phase = PtPhase::Symmetric;

    static Example2Config symmetric_defaults() { return {0.9, 0.5, 0.0, PtPhase::Symmetric}; }
    static Example2Config broken_defaults() { return {1.2, 1.5, 0.0, PtPhase::Broken}; }
};

// H(gamma) = [[i gamma, 1], [1, -i gamma]]
Matrix pt_hamiltonian(double gamma);

// Throws EpDegenerate when |1 - gamma^2| < tol.ep and PhaseMismatch when
// gamma does not belong to `phase` (symmetric: gamma^2 < 1, broken: gamma > 1).
void check_pt_region(double gamma, PtPhase phase, const Tolerances& tol = {});

// Closed-form right eigenvectors of H(gamma) in the normalization that makes
// [sum |R><R|]^{-1} equal to the closed-form metrics below.
EigenSystem pt_eigensystem(double gamma, PtPhase phase, const Tolerances& tol = {});

// Closed forms of the eigenframe metric of H(gamma):
// symmetric [[1, -i g], [i g, 1]] / sqrt(1 - g^2),
// broken    [[g, -i], [i, g]] / sqrt(g^2 - 1).
Matrix pt_metric_closed_form(double gamma, PtPhase phase);

// Symmetric: A = H(gamma), B = sigma_y. Broken: A = H(1/gamma), B = sigma_y.
// The metric is the eigenframe metric of H(gamma); the state is
// N (|R_1> + p e^{i alpha} |R_2>) normalized in that metric.
Problem build_example2(const Example2Config& cfg, const Tolerances& tol = {});

struct ScenarioPoint {
    double param = 0.0;
    std::vector<UrEvaluation> evaluations; // UR1, UR2, UR3, UR4; empty on error
    std::optional<std::string> error;

    bool all_hold() const noexcept;
};

// Evaluates a problem in formalism `f`. The Plain formalism reads the state
// with the Dirac product, so the state is renormalized for it.
std::vector<UrEvaluation> evaluate_problem(const Problem& prob, Formalism f,
                                           const std::optional<StateVector>& psi_perp = std::nullopt,
                                           const Tolerances& tol = {});

using ProblemBuilder = std::function<Problem(double)>;

// Uniform grid over [lo, hi] inclusive of both ends. Per-point failures are
// recorded on the point, never thrown. Output order follows the grid.
std::vector<ScenarioPoint> sweep(const ProblemBuilder& builder, double lo, double hi, std::size_t points,
                                 Formalism f, const Tolerances& tol = {});

// k-th node of the grid used by sweep.
double grid_node(double lo, double hi, std::size_t points, std::size_t k);

} // namespace nhur
