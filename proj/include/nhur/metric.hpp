#pragma once

#include <optional>
#include <string_view>

#include "nhur/linalg.hpp"
#include "nhur/tolerances.hpp"

namespace nhur {

enum class Provenance { Identity, Explicit, EigenframeDerived };

std::string_view to_string(Provenance p) noexcept;

struct MetricReport {
    bool hermitian = false;
    bool positive_definite = false;
    double min_eigenvalue = 0.0;
    // ||G H - H^dagger G||_F, present when a Hamiltonian was supplied.
    std::optional<double> stationarity_residual;

    bool valid() const noexcept { return hermitian && positive_definite; }
};

// Hermiticity, positive definiteness and (optionally) the static residual of
// the metric's equation of motion against `h`. Never throws on a bad metric;
// the report carries the verdict.
MetricReport validate_metric(const Matrix& g, const std::optional<Matrix>& h = std::nullopt,
                             const Tolerances& tol = {});

// A validated Hilbert-space metric. Immutable once built.
class Metric {
public:
    static Metric identity(std::size_t dim);
    // Throws ValidationFailed if `g` is not Hermitian positive definite.
    static Metric from_matrix(Matrix g, const std::optional<Matrix>& h = std::nullopt,
                              const Tolerances& tol = {});

    const Matrix& matrix() const noexcept { return g_; }
    std::size_t dim() const noexcept { return g_.dim(); }
    Provenance provenance() const noexcept { return provenance_; }
    const MetricReport& report() const noexcept { return report_; }

private:
    friend Metric metric_from_right_eigenvectors(const EigenSystem&, const std::optional<Matrix>&,
                                                 const Tolerances&);
    Metric(Matrix g, Provenance p, MetricReport r) : g_(std::move(g)), provenance_(p), report_(r) {}

    Matrix g_;
    Provenance provenance_ = Provenance::Identity;
    MetricReport report_;
};

// G = [sum_i |R_i><R_i|]^{-1}. Throws SingularFrame if the frame sum is not
// invertible and ValidationFailed if the result is not Hermitian PD. When `h`
// is given the stationarity residual is recorded in the report.
Metric metric_from_right_eigenvectors(const EigenSystem& sys, const std::optional<Matrix>& h = std::nullopt,
                                      const Tolerances& tol = {});

struct GoodObservableCheck {
    bool good = false;
    double residual = 0.0; // ||X^dagger G - G X||_F / (||G||_F ||X||_F)
};

// X is a good observable for G when X^dagger G = G X.
GoodObservableCheck is_good_observable(const Matrix& x, const Metric& g, const Tolerances& tol = {});

// <psi|G|psi>
Complex metric_norm_squared(const StateVector& psi, const Metric& g);

// Throws NotNormalized unless |<psi|G|psi> - 1| <= tol.norm.
void require_normalized(const StateVector& psi, const Metric& g, const Tolerances& tol = {});

// <X>_G = <psi|G X|psi>
Complex g_expectation(const Matrix& x, const StateVector& psi, const Metric& g, const Tolerances& tol = {});

// Delta X_g^2 = <X^dagger G X> - <X^dagger G><G X>. Real for PD G; imaginary
// leakage above tol.var raises InternalInconsistency, small negative values
// are clamped to zero.
double g_variance(const Matrix& x, const StateVector& psi, const Metric& g, const Tolerances& tol = {});

// Cov_g(A, B) = <A^dagger G B> - <A^dagger G><G B>
Complex g_covariance(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g,
                     const Tolerances& tol = {});

} // namespace nhur
