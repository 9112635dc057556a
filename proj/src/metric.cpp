#include "nhur/metric.hpp"

#include <algorithm>
#include <cmath>

#include "nhur/errors.hpp"

namespace nhur {

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
    case Provenance::Identity: return "identity";
    case Provenance::Explicit: return "explicit";
    case Provenance::EigenframeDerived: return "eigenframe";
    }
    return "unknown";
}

MetricReport validate_metric(const Matrix& g, const std::optional<Matrix>& h, const Tolerances& tol) {
    MetricReport rep;
    const double gnorm = g.frobenius_norm();
    rep.hermitian = distance(g, g.adjoint()) <= tol.herm * gnorm;

    const auto eigs = hermitian_eigenvalues(g);
    rep.min_eigenvalue = eigs.front();
    const double top = std::max(std::abs(eigs.back()), std::abs(eigs.front()));
    rep.positive_definite = rep.hermitian && top > 0.0 && rep.min_eigenvalue > tol.pd * top;

    if (h) {
        if (h->dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "metric and Hamiltonian dims differ");
        rep.stationarity_residual = distance(g * *h, h->adjoint() * g);
    }
    return rep;
}

Metric Metric::identity(std::size_t dim) {
    MetricReport rep{true, true, 1.0, std::nullopt};
    return Metric(Matrix::identity(dim), Provenance::Identity, rep);
}

Metric Metric::from_matrix(Matrix g, const std::optional<Matrix>& h, const Tolerances& tol) {
    MetricReport rep = validate_metric(g, h, tol);
    if (!rep.valid()) {
        throw Error(ErrorCode::ValidationFailed,
                    rep.hermitian ? "metric is not positive definite" : "metric is not Hermitian");
    }
    return Metric(std::move(g), Provenance::Explicit, rep);
}

Metric metric_from_right_eigenvectors(const EigenSystem& sys, const std::optional<Matrix>& h,
                                      const Tolerances& tol) {
    if (sys.right.empty()) throw Error(ErrorCode::InvalidArgument, "empty eigensystem");
    const std::size_t n = sys.right.front().dim();
    Matrix frame(n);
    for (const auto& r : sys.right) frame += outer(r, r);

    Matrix g = inverse(frame, tol.pd);
    MetricReport rep = validate_metric(g, h, tol);
    if (!rep.valid()) throw Error(ErrorCode::ValidationFailed, "eigenframe metric is not Hermitian positive definite");
    return Metric(std::move(g), Provenance::EigenframeDerived, rep);
}

GoodObservableCheck is_good_observable(const Matrix& x, const Metric& g, const Tolerances& tol) {
    if (x.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "observable and metric dims differ");
    const Matrix& gm = g.matrix();
    const double scale = gm.frobenius_norm() * x.frobenius_norm();
    const double defect = distance(x.adjoint() * gm, gm * x);
    GoodObservableCheck out;
    out.residual = scale > 0.0 ? defect / scale : defect;
    out.good = out.residual <= tol.good;
    return out;
}

Complex metric_norm_squared(const StateVector& psi, const Metric& g) {
    return matrix_element(psi, g.matrix(), psi);
}

void require_normalized(const StateVector& psi, const Metric& g, const Tolerances& tol) {
    const Complex n2 = metric_norm_squared(psi, g);
    if (std::abs(n2 - 1.0) > tol.norm) {
        throw Error(ErrorCode::NotNormalized,
                    "<psi|G|psi> = " + std::to_string(n2.real()) + (n2.imag() >= 0 ? "+" : "") +
                        std::to_string(n2.imag()) + "i");
    }
}

Complex g_expectation(const Matrix& x, const StateVector& psi, const Metric& g, const Tolerances& tol) {
    require_normalized(psi, g, tol);
    return matrix_element(psi, g.matrix(), x * psi);
}

Complex g_covariance(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g,
                     const Tolerances& tol) {
    require_normalized(psi, g, tol);
    const Matrix& gm = g.matrix();
    const StateVector a_psi = a * psi;
    const StateVector g_b_psi = gm * (b * psi);
    const Complex adag_g_b = inner(a_psi, g_b_psi);    // <A^dagger G B>
    const Complex adag_g = inner(a_psi, gm * psi);     // <A^dagger G>
    const Complex g_b = inner(psi, g_b_psi);           // <G B>
    return adag_g_b - adag_g * g_b;
}

double g_variance(const Matrix& x, const StateVector& psi, const Metric& g, const Tolerances& tol) {
    const Complex v = g_covariance(x, x, psi, g, tol);
    if (std::abs(v.imag()) > tol.var) {
        throw Error(ErrorCode::InternalInconsistency, "variance has imaginary part " + std::to_string(v.imag()));
    }
    if (v.real() < 0.0) {
        if (v.real() < -tol.var) {
            throw Error(ErrorCode::InternalInconsistency, "negative variance " + std::to_string(v.real()));
        }
        return 0.0;
    }
    return v.real();
}

} // namespace nhur
