#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nhur/linalg.hpp"
#include "nhur/metric.hpp"
#include "nhur/tolerances.hpp"

namespace nhur {

enum class Relation { UR1, UR2, UR3, UR4, Combined };

// Plain: Dirac inner product, the metric argument is ignored.
// GMetric: G-weighted variances and covariance.
// GoodObservable: the commutator / anticommutator forms valid when both
// operators satisfy X^dagger G = G X.
enum class Formalism { Plain, GMetric, GoodObservable };

// Requested sign for UR3.
enum class SignChoice { Plus, Minus, Max };

// Branch recorded on an evaluation; None for relations without a sign.
enum class Branch { None, Plus, Minus };

std::string_view to_string(Relation r) noexcept;
std::string_view to_string(Formalism f) noexcept;
std::string_view to_string(Branch b) noexcept;
std::optional<Formalism> parse_formalism(std::string_view s) noexcept;

struct UrEvaluation {
    Relation relation = Relation::UR1;
    Formalism formalism = Formalism::Plain;
    Branch branch = Branch::None;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    bool holds = false;
    bool degenerate = false;
};

// Delta A^2 + Delta B^2 >= 2 Im Cov(A, B); good-observable form i<[B, A]>_G.
UrEvaluation ur1(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                 const Tolerances& tol = {});

// Delta A^2 + Delta B^2 >= 2 Re Cov(A, B); good-observable form
// <{A, B}>_G - 2 <A>_G <B>_G.
UrEvaluation ur2(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                 const Tolerances& tol = {});

// Delta A^2 + Delta B^2 >= 2 max{Re Cov, Im Cov}.
UrEvaluation ur_combined(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                         const Tolerances& tol = {});

// Delta A^2 + Delta B^2 >= s 2 Im Cov(A, B) + |<perp|G (A + s i B)|psi>|^2,
// s = +1 / -1. Branch labels follow this covariance form in every formalism.
// With no `psi_perp` the canonical maximizer is used per branch (the unique
// complement in dimension 2).
UrEvaluation ur3(const Matrix& a, const Matrix& b, const StateVector& psi,
                 const std::optional<StateVector>& psi_perp, const Metric& g, Formalism f, SignChoice sign,
                 const Tolerances& tol = {});

// Delta A^2 + Delta B^2 >= max_{+,-} 1/2 |<perp_{A+-B}|G (A +- B)|psi>|^2
// with the Aharonov-Vaidman partner of A +- B. Branches where psi is an
// eigenstate of A +- B contribute zero and mark the record degenerate.
UrEvaluation ur4(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                 const Tolerances& tol = {});

// UR1, UR2, UR3 (max branch), UR4 in that order.
std::vector<UrEvaluation> evaluate_all(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g,
                                       Formalism f, const std::optional<StateVector>& psi_perp = std::nullopt,
                                       const Tolerances& tol = {});

} // namespace nhur
