#pragma once

// Test-only reference computations. Everything here is written against raw
// entries so it shares no code path with the library routines it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nhur/linalg.hpp"
#include "nhur/metric.hpp"

namespace oracle {

using nhur::Complex;
using nhur::Matrix;
using nhur::StateVector;

using Vec = std::vector<Complex>;

inline Vec mul(const Matrix& m, const Vec& v) {
    Vec out(v.size());
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

inline Vec to_vec(const StateVector& s) { return Vec(s.amplitudes().begin(), s.amplitudes().end()); }

inline Complex dot(const Vec& u, const Vec& v) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

inline double norm2(const Vec& v) { return dot(v, v).real(); }

// Upper-triangular U with G = U^dagger U (Cholesky), so that
// <v|G|v> = ||U v||^2.
inline Matrix cholesky_upper(const Matrix& g) {
    const std::size_t n = g.dim();
    Matrix u(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = g(i, i);
        for (std::size_t k = 0; k < i; ++k) s -= std::conj(u(k, i)) * u(k, i);
        const double d = std::sqrt(s.real());
        u(i, i) = d;
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex t = g(i, j);
            for (std::size_t k = 0; k < i; ++k) t -= std::conj(u(k, i)) * u(k, j);
            u(i, j) = t / d;
        }
    }
    return u;
}

// <psi|G X|psi> computed entrywise.
inline Complex g_mean(const Matrix& g, const Matrix& x, const Vec& psi) {
    return dot(psi, mul(g, mul(x, psi)));
}

// ||G^{1/2} (X - <X>_G) psi||^2 through the Cholesky factor.
inline double g_variance(const Matrix& g, const Matrix& x, const Vec& psi) {
    const Complex m = g_mean(g, x, psi);
    Vec d = mul(x, psi);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= m * psi[i];
    return norm2(mul(cholesky_upper(g), d));
}

// Hermitian textbook statistics with G = I.
inline double herm_mean(const Matrix& x, const Vec& psi) { return dot(psi, mul(x, psi)).real(); }

inline double herm_variance(const Matrix& x, const Vec& psi) {
    const double m = herm_mean(x, psi);
    return dot(psi, mul(x, mul(x, psi))).real() - m * m;
}

// Robertson product bound: Var(A) Var(B) >= |<[A, B]>|^2 / 4.
inline double robertson_rhs(const Matrix& a, const Matrix& b, const Vec& psi) {
    const Vec ab = mul(a, mul(b, psi));
    const Vec ba = mul(b, mul(a, psi));
    Vec c(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) c[i] = ab[i] - ba[i];
    return 0.25 * std::norm(dot(psi, c));
}

inline constexpr Complex I{0.0, 1.0};

inline Vec sub(Vec a, const Vec& b, Complex s = 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= s * b[i];
    return a;
}

// Hermitian textbook forms with G = I, all entrywise.
struct HermitianOracle {
    double lhs, ur1, ur2, ur3, ur4;
};

inline HermitianOracle hermitian_forms(const Matrix& a, const Matrix& b, const Vec& psi) {
    HermitianOracle o{};
    o.lhs = oracle::herm_variance(a, psi) + oracle::herm_variance(b, psi);

    const Vec ab = oracle::mul(a, oracle::mul(b, psi)), ba = oracle::mul(b, oracle::mul(a, psi));
    const Complex comm_ba = oracle::dot(psi, sub(ba, ab)); // <[B, A]>
    o.ur1 = (I * comm_ba).real();

    Vec anti(psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) anti[k] = ab[k] + ba[k];
    o.ur2 = oracle::dot(psi, anti).real() - 2.0 * oracle::herm_mean(a, psi) * oracle::herm_mean(b, psi);

    // +-i<[A, B]> + |<psi|A +- iB|perp>|^2 with the 2D complement.
    const Vec perp{-std::conj(psi[1]), std::conj(psi[0])};
    double best3 = -1e300;
    for (double s : {1.0, -1.0}) {
        const Vec ap = oracle::mul(a, perp), bp = oracle::mul(b, perp);
        Vec ladder(2);
        for (std::size_t k = 0; k < 2; ++k) ladder[k] = ap[k] + s * I * bp[k];
        const double v = (s * I * -comm_ba).real() + std::norm(oracle::dot(psi, ladder));
        best3 = std::max(best3, v);
    }
    o.ur3 = best3;

    // 1/2 |<perp_X|X|psi>|^2 with the AV partner of X = A +- B.
    double best4 = 0.0;
    for (double s : {1.0, -1.0}) {
        Matrix x(2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) x(r, c) = a(r, c) + s * b(r, c);
        const double m = oracle::herm_mean(x, psi);
        const double sd = std::sqrt(oracle::herm_variance(x, psi));
        if (sd <= 1e-9) continue;
        Vec av = sub(oracle::mul(x, psi), psi, m);
        for (auto& z : av) z /= sd;
        best4 = std::max(best4, 0.5 * std::norm(oracle::dot(av, oracle::mul(x, psi))));
    }
    o.ur4 = best4;
    return o;
}

// ---------------------------------------------------------------------------
// Random generators

inline Complex unit_disc(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(u(rng));
    const double t = 2.0 * M_PI * u(rng);
    return std::polar(r, t);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n = 2) {
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = unit_disc(rng);
    return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, std::size_t n = 2) {
    Matrix m(n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = u(rng);
        for (std::size_t c = r + 1; c < n; ++c) {
            m(r, c) = unit_disc(rng);
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

// State with <psi|G|psi> = 1.
inline StateVector random_state(std::mt19937_64& rng, const Matrix& g) {
    const std::size_t n = g.dim();
    Vec v(n);
    for (auto& z : v) z = unit_disc(rng);
    const double s = std::sqrt(dot(v, mul(g, v)).real());
    for (auto& z : v) z /= s;
    return StateVector(v, nhur::Context::Metric);
}

// X = G^{-1} K with K Hermitian satisfies X^dagger G = K = G X.
inline Matrix random_good_observable(std::mt19937_64& rng, const Matrix& g) {
    return nhur::inverse(g) * random_hermitian(rng, g.dim());
}

} // namespace oracle
