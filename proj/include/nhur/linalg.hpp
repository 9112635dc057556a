#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "nhur/tolerances.hpp"

namespace nhur {

using Complex = std::complex<double>;

inline constexpr Complex I_UNIT{0.0, 1.0};

// Which inner product a state is meant to be read with.
enum class Context { Dirac, Metric };

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::size_t dim, Context ctx = Context::Dirac);
    StateVector(std::initializer_list<Complex> amps, Context ctx = Context::Dirac);
    explicit StateVector(std::vector<Complex> amps, Context ctx = Context::Dirac);

    static StateVector basis(std::size_t dim, std::size_t k, Context ctx = Context::Dirac);

    std::size_t dim() const noexcept { return amps_.size(); }
    Context context() const noexcept { return ctx_; }
    void set_context(Context ctx) noexcept { ctx_ = ctx; }

    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }

    StateVector& operator+=(const StateVector& o);
    StateVector& operator-=(const StateVector& o);
    StateVector& operator*=(Complex s);

    // Dirac 2-norm.
    double norm() const;

    bool operator==(const StateVector& o) const = default;

private:
    std::vector<Complex> amps_;
    Context ctx_ = Context::Dirac;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(Complex s, StateVector v);

// Dense square complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);
    Matrix(std::size_t dim, std::vector<Complex> row_major);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(std::span<const Complex> d);
    // Columns taken from the given vectors.
    static Matrix from_columns(std::span<const StateVector> cols);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const Complex> data() const noexcept { return data_; }

    Matrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(Complex s);

    bool operator==(const Matrix& o) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Complex s, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
StateVector operator*(const Matrix& m, const StateVector& v);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

// <u|v>, conjugate-linear in the first slot.
Complex inner(const StateVector& u, const StateVector& v);
// <u|M|v>
Complex matrix_element(const StateVector& u, const Matrix& m, const StateVector& v);
// |u><v|
Matrix outer(const StateVector& u, const StateVector& v);

double distance(const Matrix& a, const Matrix& b);
double distance(const StateVector& a, const StateVector& b);

Complex determinant(const Matrix& m);
// Throws SingularFrame when a pivot falls below `singular_tol` times the
// largest entry of the input.
Matrix inverse(const Matrix& m, double singular_tol = 1e-14);

// Eigenvalues of a Hermitian matrix in ascending order. Closed form for
// dim <= 2, a dense self-adjoint solver otherwise. Only the Hermitian part
// of `m` is read.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

// Left eigenvectors are stored as kets |L_i> so that inner(left[i], right[j])
// is the biorthogonal pairing <L_i|R_j>.
struct EigenSystem {
    std::vector<Complex> values;
    std::vector<StateVector> right;
    std::vector<StateVector> left;

    std::size_t dim() const noexcept { return values.size(); }
    // sum_i E_i |R_i><L_i|
    Matrix reconstruct() const;
};

// Completes an eigensystem from user-supplied eigenvalues and right
// eigenvectors: left vectors are the rows of R^{-1}. Throws EpDegenerate when
// the column-normalized R is singular within tol.ep.
EigenSystem eigensystem_from_right(std::vector<Complex> values, std::vector<StateVector> right,
                                   const Tolerances& tol = {});

// Closed-form 2x2 spectral decomposition. Eigenvalues are sorted by
// descending real part then descending imaginary part. Right eigenvectors are
// unit-norm with the first non-negligible amplitude real positive.
EigenSystem eig2(const Matrix& m, const Tolerances& tol = {});

// Pauli matrices.
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

} // namespace nhur
