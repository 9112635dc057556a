#pragma once

namespace nhur {

// Numerical thresholds shared by all modules. The defaults are tuned for
// double precision on 2x2 closed forms; every public operation that compares
// against a threshold takes a Tolerances so tests and the CLI can override.
struct Tolerances {
    double mach = 1e-12;   // algebraic identities
    double eig = 1e-10;    // eigen-equation and biorthogonality residuals
    double ep = 1e-8;      // coalescence guard (eigenvector matrix, |1 - gamma^2|)
    double herm = 1e-12;   // relative Hermiticity defect of a metric
    double pd = 1e-12;     // relative floor on the smallest metric eigenvalue
    double good = 1e-9;    // relative good-observable residual
    double var = 1e-9;     // imaginary leakage / negative clamp of variances
    double norm = 1e-10;   // |<psi|G|psi> - 1|
    double orth = 1e-10;   // |<perp|G|psi>|
    double degen = 1e-9;   // standard deviation below which psi is an eigenstate
    double ur = 1e-9;      // gap >= -ur counts as "holds"
};

} // namespace nhur
