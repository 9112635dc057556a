#include "nhur/states.hpp"

#include <cmath>

#include "nhur/errors.hpp"

namespace nhur {

namespace {

StateVector fix_phase(StateVector v) {
    double largest = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) largest = std::max(largest, std::abs(v[i]));
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) > 1e-12 * largest) {
            const Complex ph = std::conj(v[i]) / std::abs(v[i]);
            v *= ph;
            v[i] = std::abs(v[i]);
            break;
        }
    }
    return v;
}

} // namespace

Context context_of(const Metric& g) noexcept {
    return g.provenance() == Provenance::Identity ? Context::Dirac : Context::Metric;
}

StateVector g_normalize(StateVector v, const Metric& g) {
    const Complex n2 = metric_norm_squared(v, g);
    if (v.norm() == 0.0 || std::abs(n2) == 0.0) throw Error(ErrorCode::ZeroVector, "cannot normalize a zero vector");
    if (n2.real() <= 0.0) throw Error(ErrorCode::NegativeNorm, "<v|G|v> is not positive; metric is invalid");
    v *= 1.0 / std::sqrt(n2.real());
    v.set_context(context_of(g));
    return v;
}

StateVector superposition_state(std::span<const StateVector> basis, std::span<const Complex> weights,
                                const Metric& g) {
    if (basis.empty() || basis.size() != weights.size()) {
        throw Error(ErrorCode::DimensionMismatch, "basis and weights must have equal, nonzero length");
    }
    StateVector v(basis.front().dim());
    for (std::size_t i = 0; i < basis.size(); ++i) v += weights[i] * basis[i];
    return g_normalize(std::move(v), g);
}

StateVector g_orthogonal_complement_2d(const StateVector& psi, const Metric& g, const Tolerances& tol) {
    if (psi.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "complement construction requires dim 2");
    require_normalized(psi, g, tol);
    // <v|w> = 0 for w = G psi.
    const StateVector w = g.matrix() * psi;
    StateVector v{std::conj(w[1]), -std::conj(w[0])};
    return fix_phase(g_normalize(std::move(v), g));
}

OrthogonalPair av_orthogonal_state(const Matrix& x, const StateVector& psi, const Metric& g,
                                   const Tolerances& tol) {
    const Complex mean = g_expectation(x, psi, g, tol);
    const double sd = std::sqrt(g_variance(x, psi, g, tol));
    if (sd <= tol.degen) {
        throw Error(ErrorCode::DegenerateEigenstate, "psi is an eigenstate of the operator; AV direction undefined");
    }
    StateVector perp = x * psi - mean * psi;
    perp *= 1.0 / sd;
    perp.set_context(context_of(g));

    OrthogonalPair out{psi, perp, context_of(g), 0.0};
    out.overlap_residual = std::abs(matrix_element(perp, g.matrix(), psi));
    return out;
}

StateVector project_to_complement(const StateVector& target, const StateVector& psi, const Metric& g,
                                  const Tolerances& tol) {
    require_normalized(psi, g, tol);
    const Complex overlap = matrix_element(psi, g.matrix(), target);
    StateVector v = target - overlap * psi;
    const double vn = std::sqrt(std::max(metric_norm_squared(v, g).real(), 0.0));
    const double tn = std::sqrt(std::max(metric_norm_squared(target, g).real(), 0.0));
    if (vn <= tol.degen * std::max(tn, 1.0)) {
        if (psi.dim() == 2) return g_orthogonal_complement_2d(psi, g, tol);
        // Any complement direction gives the same (zero) overlap; take the
        // basis vector whose projection is largest.
        double best = -1.0;
        StateVector pick(psi.dim());
        for (std::size_t k = 0; k < psi.dim(); ++k) {
            const StateVector e = StateVector::basis(psi.dim(), k);
            StateVector pk = e - matrix_element(psi, g.matrix(), e) * psi;
            const double nk = metric_norm_squared(pk, g).real();
            if (nk > best) {
                best = nk;
                pick = std::move(pk);
            }
        }
        return fix_phase(g_normalize(std::move(pick), g));
    }
    return fix_phase(g_normalize(std::move(v), g));
}

} // namespace nhur
