#pragma once

#include <span>

#include "nhur/linalg.hpp"
#include "nhur/metric.hpp"
#include "nhur/tolerances.hpp"

namespace nhur {

struct OrthogonalPair {
    StateVector psi;
    StateVector psi_perp;
    Context context = Context::Dirac;
    double overlap_residual = 0.0; // |<perp|G|psi>|
};

// Context tag implied by a metric: identity metrics read as Dirac.
Context context_of(const Metric& g) noexcept;

// Rescales v so that <v|G|v> = 1. Throws ZeroVector / NegativeNorm.
StateVector g_normalize(StateVector v, const Metric& g);

// N * sum_i w_i |b_i> with <Psi|G|Psi> = 1.
StateVector superposition_state(std::span<const StateVector> basis, std::span<const Complex> weights,
                                const Metric& g);

// The unique (up to phase) G-normalized vector with <perp|G|psi> = 0 in two
// dimensions. Phase: first non-negligible amplitude real positive.
StateVector g_orthogonal_complement_2d(const StateVector& psi, const Metric& g, const Tolerances& tol = {});

// Aharonov-Vaidman partner (X - <X>_G)|psi> / Delta X_G. Throws
// DegenerateEigenstate when psi is (numerically) an eigenstate of X.
OrthogonalPair av_orthogonal_state(const Matrix& x, const StateVector& psi, const Metric& g,
                                   const Tolerances& tol = {});

// G-normalized projection of `target` onto the G-orthogonal complement of
// psi; the maximizer of |<perp|G|target>| over normalized perp. In dimension
// 2 this returns the unique complement whenever the projection vanishes.
StateVector project_to_complement(const StateVector& target, const StateVector& psi, const Metric& g,
                                  const Tolerances& tol = {});

} // namespace nhur
