#include "nhur/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "nhur/errors.hpp"

namespace nhur {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NonFinite: return "NON_FINITE";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::EpDegenerate: return "EP_DEGENERATE";
    case ErrorCode::SingularFrame: return "SINGULAR_FRAME";
    case ErrorCode::ValidationFailed: return "VALIDATION_FAILED";
    case ErrorCode::NotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::InternalInconsistency: return "INTERNAL_INCONSISTENCY";
    case ErrorCode::ZeroVector: return "ZERO_VECTOR";
    case ErrorCode::NegativeNorm: return "NEGATIVE_NORM";
    case ErrorCode::DegenerateEigenstate: return "DEGENERATE_EIGENSTATE";
    case ErrorCode::NotOrthogonal: return "NOT_ORTHOGONAL";
    case ErrorCode::NotGoodObservable: return "NOT_GOOD_OBSERVABLE";
    case ErrorCode::PhaseMismatch: return "PHASE_MISMATCH";
    }
    return "UNKNOWN";
}

namespace {

void require_finite(std::span<const Complex> xs) {
    for (const auto& z : xs) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::NonFinite, "non-finite entry");
        }
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(op) + ": " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

} // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::size_t dim, Context ctx) : amps_(dim), ctx_(ctx) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
}

StateVector::StateVector(std::initializer_list<Complex> amps, Context ctx)
    : StateVector(std::vector<Complex>(amps), ctx) {}

StateVector::StateVector(std::vector<Complex> amps, Context ctx) : amps_(std::move(amps)), ctx_(ctx) {
    if (amps_.empty()) throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
    require_finite(amps_);
}

StateVector StateVector::basis(std::size_t dim, std::size_t k, Context ctx) {
    if (k >= dim) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    StateVector v(dim, ctx);
    v[k] = 1.0;
    return v;
}

StateVector& StateVector::operator+=(const StateVector& o) {
    require_same_dim(dim(), o.dim(), "vector add");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
    require_same_dim(dim(), o.dim(), "vector subtract");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= o.amps_[i];
    return *this;
}

StateVector& StateVector::operator*=(Complex s) {
    for (auto& a : amps_) a *= s;
    return *this;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(Complex s, StateVector v) { return v *= s; }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

Matrix::Matrix(std::size_t dim, std::vector<Complex> row_major) : dim_(dim), data_(std::move(row_major)) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
    if (data_.size() != dim * dim) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    require_finite(data_);
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::from_columns(std::span<const StateVector> cols) {
    Matrix m(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        require_same_dim(cols[c].dim(), cols.size(), "from_columns");
        for (std::size_t r = 0; r < cols.size(); ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex Matrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_dim(dim_, o.dim_, "matrix add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_dim(dim_, o.dim_, "matrix subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a.dim(), b.dim(), "mat_mul");
    const std::size_t n = a.dim();
    Matrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

StateVector operator*(const Matrix& m, const StateVector& v) {
    require_same_dim(m.dim(), v.dim(), "matrix-vector product");
    StateVector out(v.dim(), v.context());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Complex s = 0.0;
        for (std::size_t c = 0; c < m.dim(); ++c) s += m(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }
Matrix adjoint(const Matrix& m) { return m.adjoint(); }
Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Complex inner(const StateVector& u, const StateVector& v) {
    require_same_dim(u.dim(), v.dim(), "inner");
    Complex s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

Complex matrix_element(const StateVector& u, const Matrix& m, const StateVector& v) {
    return inner(u, m * v);
}

Matrix outer(const StateVector& u, const StateVector& v) {
    require_same_dim(u.dim(), v.dim(), "outer");
    Matrix m(u.dim());
    for (std::size_t r = 0; r < u.dim(); ++r)
        for (std::size_t c = 0; c < v.dim(); ++c) m(r, c) = u[r] * std::conj(v[c]);
    return m;
}

double distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }
double distance(const StateVector& a, const StateVector& b) { return (a - b).norm(); }

// ---------------------------------------------------------------------------
// LU with partial pivoting

namespace {

struct Lu {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

Lu lu_decompose(const Matrix& m, double singular_tol) {
    const std::size_t n = m.dim();
    Lu out{m, std::vector<std::size_t>(n), 1, false};
    for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;

    double scale = 0.0;
    for (const auto& z : m.data()) scale = std::max(scale, std::abs(z));
    const double floor = singular_tol * scale;

    Matrix& a = out.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > best) {
                best = std::abs(a(r, k));
                piv = r;
            }
        }
        if (best <= floor || best == 0.0) {
            out.singular = true;
            return out;
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            std::swap(out.perm[k], out.perm[piv]);
            out.sign = -out.sign;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = a(r, k) / a(k, k);
            a(r, k) = f;
            for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
        }
    }
    return out;
}

} // namespace

Complex determinant(const Matrix& m) {
    if (m.dim() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const Lu f = lu_decompose(m, 0.0);
    if (f.singular) return 0.0;
    Complex d = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < m.dim(); ++i) d *= f.lu(i, i);
    return d;
}

Matrix inverse(const Matrix& m, double singular_tol) {
    const std::size_t n = m.dim();
    const Lu f = lu_decompose(m, singular_tol);
    if (f.singular) throw Error(ErrorCode::SingularFrame, "matrix is not invertible");

    Matrix inv(n);
    for (std::size_t col = 0; col < n; ++col) {
        // Solve L U x = P e_col.
        std::vector<Complex> x(n);
        for (std::size_t r = 0; r < n; ++r) x[r] = (f.perm[r] == col) ? 1.0 : 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < r; ++k) x[r] -= f.lu(r, k) * x[k];
        for (std::size_t r = n; r-- > 0;) {
            for (std::size_t k = r + 1; k < n; ++k) x[r] -= f.lu(r, k) * x[k];
            x[r] /= f.lu(r, r);
        }
        for (std::size_t r = 0; r < n; ++r) inv(r, col) = x[r];
    }
    return inv;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    const std::size_t n = m.dim();
    if (n == 1) return {m(0, 0).real()};
    if (n == 2) {
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
        const double mid = 0.5 * (a + d);
        const double rad = std::hypot(0.5 * (a - d), std::abs(b));
        return {mid - rad, mid + rad};
    }
    Eigen::MatrixXcd h(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return out;
}

// ---------------------------------------------------------------------------
// Eigensystems

Matrix EigenSystem::reconstruct() const {
    const std::size_t n = dim();
    Matrix m(right.front().dim());
    for (std::size_t i = 0; i < n; ++i) m += values[i] * outer(right[i], left[i]);
    return m;
}

EigenSystem eigensystem_from_right(std::vector<Complex> values, std::vector<StateVector> right,
                                   const Tolerances& tol) {
    const std::size_t n = values.size();
    if (n == 0 || right.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "need one right eigenvector per eigenvalue");
    }
    for (const auto& r : right) require_same_dim(r.dim(), n, "eigensystem_from_right");

    // Singularity is judged on the column-normalized frame so that the
    // caller's normalization convention does not move the threshold.
    std::vector<StateVector> unit = right;
    for (auto& u : unit) {
        const double nr = u.norm();
        if (nr == 0.0) throw Error(ErrorCode::EpDegenerate, "zero right eigenvector");
        u *= 1.0 / nr;
    }
    if (std::abs(determinant(Matrix::from_columns(unit))) <= tol.ep) {
        throw Error(ErrorCode::EpDegenerate, "right eigenvectors are (nearly) linearly dependent");
    }

    const Matrix rinv = inverse(Matrix::from_columns(right));
    EigenSystem sys{std::move(values), std::move(right), {}};
    sys.left.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        StateVector l(n);
        for (std::size_t k = 0; k < n; ++k) l[k] = std::conj(rinv(i, k));
        sys.left.push_back(std::move(l));
    }
    return sys;
}

namespace {

bool ordered_before(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

StateVector fix_phase(StateVector v, double rel_tol) {
    const double nr = v.norm();
    v *= 1.0 / nr;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) > rel_tol) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            v[i] = std::abs(v[i]);
            break;
        }
    }
    return v;
}

} // namespace

EigenSystem eig2(const Matrix& m, const Tolerances& tol) {
    if (m.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "eig2 requires a 2x2 matrix");
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex s = std::sqrt(tr * tr - 4.0 * det);

    std::vector<Complex> vals = {0.5 * (tr + s), 0.5 * (tr - s)};
    if (ordered_before(vals[1], vals[0])) std::swap(vals[0], vals[1]);

    const double scale = std::max(m.frobenius_norm(), 1.0);
    std::vector<StateVector> right;
    const bool diagonal = std::abs(b) <= tol.mach * scale && std::abs(c) <= tol.mach * scale;
    if (diagonal) {
        // Diagonal input: eigenvalues are the diagonal entries themselves.
        const bool a_first = !ordered_before(d, a);
        vals = a_first ? std::vector<Complex>{a, d} : std::vector<Complex>{d, a};
        right.push_back(StateVector::basis(2, a_first ? 0 : 1));
        right.push_back(StateVector::basis(2, a_first ? 1 : 0));
    } else {
        for (const auto& lam : vals) {
            // Two candidate null vectors of (M - lam); keep the better conditioned.
            StateVector v1{b, lam - a};
            StateVector v2{lam - d, c};
            right.push_back(fix_phase(v1.norm() >= v2.norm() ? v1 : v2, 1e-12));
        }
    }
    return eigensystem_from_right(std::move(vals), std::move(right), tol);
}

Matrix sigma_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix sigma_y() { return Matrix{{0.0, -I_UNIT}, {I_UNIT, 0.0}}; }
Matrix sigma_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

} // namespace nhur
