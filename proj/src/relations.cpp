#include "nhur/relations.hpp"

#include <algorithm>
#include <cmath>

#include "nhur/errors.hpp"
#include "nhur/states.hpp"

namespace nhur {

std::string_view to_string(Relation r) noexcept {
    switch (r) {
    case Relation::UR1: return "UR1";
    case Relation::UR2: return "UR2";
    case Relation::UR3: return "UR3";
    case Relation::UR4: return "UR4";
    case Relation::Combined: return "UR12";
    }
    return "?";
}

std::string_view to_string(Formalism f) noexcept {
    switch (f) {
    case Formalism::Plain: return "plain";
    case Formalism::GMetric: return "gmetric";
    case Formalism::GoodObservable: return "good_observable";
    }
    return "?";
}

std::string_view to_string(Branch b) noexcept {
    switch (b) {
    case Branch::None: return "none";
    case Branch::Plus: return "plus";
    case Branch::Minus: return "minus";
    }
    return "?";
}

std::optional<Formalism> parse_formalism(std::string_view s) noexcept {
    if (s == "plain") return Formalism::Plain;
    if (s == "gmetric") return Formalism::GMetric;
    if (s == "good_observable" || s == "good") return Formalism::GoodObservable;
    return std::nullopt;
}

namespace {

void require_dims(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g) {
    if (a.dim() != psi.dim() || b.dim() != psi.dim() || g.dim() != psi.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "operators, state and metric must share one dimension");
    }
}

// The metric a formalism actually reads.
Metric effective_metric(const Metric& g, Formalism f) {
    return f == Formalism::Plain ? Metric::identity(g.dim()) : g;
}

void require_good(const Matrix& a, const Matrix& b, const Metric& g, const Tolerances& tol) {
    const auto ca = is_good_observable(a, g, tol);
    const auto cb = is_good_observable(b, g, tol);
    if (!ca.good || !cb.good) {
        throw Error(ErrorCode::NotGoodObservable,
                    std::string(!ca.good ? "A" : "B") + " fails X^dagger G = G X (relative residual " +
                        std::to_string(!ca.good ? ca.residual : cb.residual) + ")");
    }
}

double real_checked(Complex z, double tol, const char* what) {
    if (std::abs(z.imag()) > tol) {
        throw Error(ErrorCode::InternalInconsistency,
                    std::string(what) + " has imaginary part " + std::to_string(z.imag()));
    }
    return z.real();
}

// <X^2>_G - <X>_G^2 for a good observable X.
double good_variance(const Matrix& x, const StateVector& psi, const Metric& g, const Tolerances& tol) {
    const Complex mean = g_expectation(x, psi, g, tol);
    const Complex second = g_expectation(x * x, psi, g, tol);
    const double v = real_checked(second - mean * mean, tol.var, "good-observable variance");
    if (v < -tol.var) throw Error(ErrorCode::InternalInconsistency, "negative good-observable variance");
    return std::max(v, 0.0);
}

struct SumStats {
    double var_a = 0.0;
    double var_b = 0.0;
    bool common_eigenstate = false;
};

SumStats sum_stats(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                   const Tolerances& tol) {
    SumStats s;
    if (f == Formalism::GoodObservable) {
        s.var_a = good_variance(a, psi, g, tol);
        s.var_b = good_variance(b, psi, g, tol);
    } else {
        s.var_a = g_variance(a, psi, g, tol);
        s.var_b = g_variance(b, psi, g, tol);
    }
    s.common_eigenstate = std::sqrt(s.var_a) <= tol.degen && std::sqrt(s.var_b) <= tol.degen;
    return s;
}

// Larger of two branch values; values within tol.mach (relative) count as a
// tie and resolve to Plus.
Branch pick_branch(double plus, double minus, const Tolerances& tol) {
    const double scale = std::max({1.0, std::abs(plus), std::abs(minus)});
    return minus - plus > tol.mach * scale ? Branch::Minus : Branch::Plus;
}

UrEvaluation finish(Relation r, Formalism f, Branch br, double lhs, double rhs, bool degenerate,
                    const Tolerances& tol) {
    UrEvaluation e;
    e.relation = r;
    e.formalism = f;
    e.branch = br;
    e.lhs = lhs;
    e.rhs = rhs;
    e.gap = lhs - rhs;
    e.holds = e.gap >= -tol.ur;
    e.degenerate = degenerate;
    return e;
}

// 2 Im Cov_g(A, B) in the covariance formalisms, Re(i<[B, A]>_G) for good
// observables.
double ur1_bound(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                 const Tolerances& tol) {
    if (f == Formalism::GoodObservable) {
        const Complex v = I_UNIT * g_expectation(commutator(b, a), psi, g, tol);
        return real_checked(v, tol.var, "i<[B,A]>_G");
    }
    return 2.0 * g_covariance(a, b, psi, g, tol).imag();
}

double ur2_bound(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                 const Tolerances& tol) {
    if (f == Formalism::GoodObservable) {
        const Complex v = g_expectation(anticommutator(a, b), psi, g, tol) -
                          2.0 * g_expectation(a, psi, g, tol) * g_expectation(b, psi, g, tol);
        return real_checked(v, tol.var, "<{A,B}>_G - 2<A>_G<B>_G");
    }
    return 2.0 * g_covariance(a, b, psi, g, tol).real();
}

} // namespace

UrEvaluation ur1(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g_in, Formalism f,
                 const Tolerances& tol) {
    require_dims(a, b, psi, g_in);
    const Metric g = effective_metric(g_in, f);
    if (f == Formalism::GoodObservable) require_good(a, b, g, tol);
    const SumStats s = sum_stats(a, b, psi, g, f, tol);
    return finish(Relation::UR1, f, Branch::None, s.var_a + s.var_b, ur1_bound(a, b, psi, g, f, tol),
                  s.common_eigenstate, tol);
}

UrEvaluation ur2(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g_in, Formalism f,
                 const Tolerances& tol) {
    require_dims(a, b, psi, g_in);
    const Metric g = effective_metric(g_in, f);
    if (f == Formalism::GoodObservable) require_good(a, b, g, tol);
    const SumStats s = sum_stats(a, b, psi, g, f, tol);
    return finish(Relation::UR2, f, Branch::None, s.var_a + s.var_b, ur2_bound(a, b, psi, g, f, tol),
                  s.common_eigenstate, tol);
}

UrEvaluation ur_combined(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g, Formalism f,
                         const Tolerances& tol) {
    const UrEvaluation e1 = ur1(a, b, psi, g, f, tol);
    const UrEvaluation e2 = ur2(a, b, psi, g, f, tol);
    return finish(Relation::Combined, f, Branch::None, e1.lhs, std::max(e1.rhs, e2.rhs), e1.degenerate, tol);
}

UrEvaluation ur3(const Matrix& a, const Matrix& b, const StateVector& psi,
                 const std::optional<StateVector>& psi_perp, const Metric& g_in, Formalism f, SignChoice sign,
                 const Tolerances& tol) {
    require_dims(a, b, psi, g_in);
    const Metric g = effective_metric(g_in, f);
    if (f == Formalism::GoodObservable) require_good(a, b, g, tol);
    const SumStats s = sum_stats(a, b, psi, g, f, tol);
    const double commutator_term = ur1_bound(a, b, psi, g, f, tol);
    const Matrix& gm = g.matrix();

    std::optional<StateVector> fixed_perp;
    if (psi_perp) {
        if (psi_perp->dim() != psi.dim()) throw Error(ErrorCode::DimensionMismatch, "psi_perp dimension");
        fixed_perp = g_normalize(*psi_perp, g);
        const double ov = std::abs(matrix_element(*fixed_perp, gm, psi));
        if (ov > tol.orth) {
            throw Error(ErrorCode::NotOrthogonal, "|<perp|G|psi>| = " + std::to_string(ov));
        }
    } else if (psi.dim() == 2) {
        fixed_perp = g_orthogonal_complement_2d(psi, g, tol);
    }

    auto branch_rhs = [&](double sgn) {
        const Matrix ladder = a + Complex(0.0, sgn) * b;           // A + s i B
        const StateVector perp = fixed_perp ? *fixed_perp : project_to_complement(ladder * psi, psi, g, tol);
        if (f == Formalism::GoodObservable) {
            const Matrix partner = a - Complex(0.0, sgn) * b;      // A - s i B
            const double overlap = std::norm(matrix_element(psi, gm * partner, perp));
            return sgn * commutator_term + overlap;
        }
        return sgn * commutator_term + std::norm(matrix_element(perp, gm * ladder, psi));
    };

    double rhs = 0.0;
    Branch br = Branch::Plus;
    switch (sign) {
    case SignChoice::Plus: rhs = branch_rhs(1.0); break;
    case SignChoice::Minus:
        rhs = branch_rhs(-1.0);
        br = Branch::Minus;
        break;
    case SignChoice::Max: {
        const double plus = branch_rhs(1.0);
        const double minus = branch_rhs(-1.0);
        br = pick_branch(plus, minus, tol);
        rhs = std::max(plus, minus);
        break;
    }
    }
    return finish(Relation::UR3, f, br, s.var_a + s.var_b, rhs, s.common_eigenstate, tol);
}

UrEvaluation ur4(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g_in, Formalism f,
                 const Tolerances& tol) {
    require_dims(a, b, psi, g_in);
    const Metric g = effective_metric(g_in, f);
    if (f == Formalism::GoodObservable) require_good(a, b, g, tol);
    const SumStats s = sum_stats(a, b, psi, g, f, tol);
    const Matrix& gm = g.matrix();

    bool degenerate = false;
    auto branch_value = [&](const Matrix& x) {
        if (std::sqrt(g_variance(x, psi, g, tol)) <= tol.degen) {
            degenerate = true;
            return 0.0;
        }
        const StateVector perp = av_orthogonal_state(x, psi, g, tol).psi_perp;
        const Complex forward = matrix_element(perp, gm * x, psi);
        if (f == Formalism::GoodObservable) {
            const Complex backward = matrix_element(psi, gm * x, perp);
            return 0.5 * real_checked(forward * backward, tol.var, "UR4 branch product");
        }
        return 0.5 * std::norm(forward);
    };

    const double plus = branch_value(a + b);
    const double minus = branch_value(a - b);
    const Branch br = pick_branch(plus, minus, tol);
    return finish(Relation::UR4, f, br, s.var_a + s.var_b, std::max(plus, minus), degenerate, tol);
}

std::vector<UrEvaluation> evaluate_all(const Matrix& a, const Matrix& b, const StateVector& psi, const Metric& g,
                                       Formalism f, const std::optional<StateVector>& psi_perp,
                                       const Tolerances& tol) {
    return {ur1(a, b, psi, g, f, tol), ur2(a, b, psi, g, f, tol),
            ur3(a, b, psi, psi_perp, g, f, SignChoice::Max, tol), ur4(a, b, psi, g, f, tol)};
}

} // namespace nhur
