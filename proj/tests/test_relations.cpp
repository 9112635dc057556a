#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nhur/errors.hpp"
#include "nhur/relations.hpp"
#include "nhur/scenarios.hpp"
#include "nhur/states.hpp"
#include "oracles.hpp"

using namespace nhur;
using oracle::Vec;
using oracle::sub;

namespace {

const Complex i1{0.0, 1.0};
constexpr Formalism kAll[] = {Formalism::Plain, Formalism::GMetric};

Metric g_s() { return Metric::from_matrix(pt_metric_closed_form(0.9, PtPhase::Symmetric)); }
Metric g_b() { return Metric::from_matrix(pt_metric_closed_form(1.2, PtPhase::Broken)); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("Pauli pair on e0") {
    const Metric id = Metric::identity(2);
    const auto e0 = StateVector::basis(2, 0), e1 = StateVector::basis(2, 1);
    for (Formalism f : {Formalism::Plain, Formalism::GMetric, Formalism::GoodObservable}) {
        const auto r1 = ur1(sigma_x(), sigma_y(), e0, id, f);
        CHECK(r1.lhs == doctest::Approx(2.0));
        CHECK(r1.rhs == doctest::Approx(2.0));
        CHECK(std::abs(r1.gap) <= 1e-15);
        CHECK(r1.holds);

        const auto r2 = ur2(sigma_x(), sigma_y(), e0, id, f);
        CHECK(std::abs(r2.rhs) <= 1e-15);
        CHECK(r2.gap == doctest::Approx(2.0));

        CHECK(ur_combined(sigma_x(), sigma_y(), e0, id, f).rhs == doctest::Approx(2.0));

        const auto plus = ur3(sigma_x(), sigma_y(), e0, e1, id, f, SignChoice::Plus);
        const auto minus = ur3(sigma_x(), sigma_y(), e0, e1, id, f, SignChoice::Minus);
        CHECK(plus.rhs == doctest::Approx(2.0));
        CHECK(minus.rhs == doctest::Approx(2.0));
        CHECK(plus.branch == Branch::Plus);
        CHECK(minus.branch == Branch::Minus);
        CHECK(std::abs(plus.gap) <= 1e-15);
        CHECK(std::abs(minus.gap) <= 1e-15);
    }
}

TEST_CASE("Example 1 at theta0 = pi/4 and 3pi/4: commuting diagonal operators") {
    for (double t : {M_PI / 4, 3 * M_PI / 4}) {
        Example1Config cfg;
        cfg.theta0 = t;
        const Problem prob = build_example1(cfg);
        const auto evals = evaluate_all(prob.a, prob.b, prob.psi, prob.metric, Formalism::Plain);
        REQUIRE(evals.size() == 4);
        for (const auto& e : evals) {
            CHECK(std::abs(e.lhs) <= 1e-12);
            CHECK(std::abs(e.rhs) <= 1e-12);
            CHECK(e.holds);
            CHECK(e.degenerate);
        }
        CHECK(evals[3].rhs == 0.0);
    }
    Example1Config cfg;
    cfg.theta0 = M_PI / 4;
    const Problem prob = build_example1(cfg);
    const auto e = ur3(prob.a, prob.b, prob.psi, StateVector::basis(2, 0), prob.metric, Formalism::Plain,
                       SignChoice::Max);
    CHECK(std::abs(e.rhs) <= 1e-12);
}

TEST_CASE("trivial identities") {
    std::mt19937_64 rng(4);
    const Metric id = Metric::identity(2);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = oracle::random_hermitian(rng);
        const StateVector psi = oracle::random_state(rng, id.matrix());
        const auto r2 = ur2(a, a, psi, id, Formalism::Plain);
        CHECK(r2.lhs == doctest::Approx(2.0 * oracle::herm_variance(a, oracle::to_vec(psi))).epsilon(1e-12));
        CHECK(std::abs(r2.gap) <= 1e-12);
    }
    // psi an eigenstate of A = B: every term vanishes.
    const auto e0 = StateVector::basis(2, 0);
    for (const auto& e : evaluate_all(sigma_z(), sigma_z(), e0, id, Formalism::Plain)) {
        CHECK(e.gap == 0.0);
        CHECK(e.degenerate);
    }
}

TEST_CASE("errors") {
    const Metric s = g_s();
    std::mt19937_64 rng(1);
    const StateVector psi = oracle::random_state(rng, s.matrix());
    CHECK(code_of([&] { (void)ur1(sigma_x(), sigma_y(), psi, s, Formalism::GoodObservable); }) ==
          ErrorCode::NotGoodObservable);
    CHECK(code_of([&] { (void)ur2(sigma_x(), sigma_y(), StateVector{1.0, 1.0}, s, Formalism::GMetric); }) ==
          ErrorCode::NotNormalized);
    CHECK(code_of([&] {
              (void)ur3(sigma_x(), sigma_y(), StateVector::basis(2, 0), StateVector{1.0, 1.0}, Metric::identity(2),
                        Formalism::Plain, SignChoice::Max);
          }) == ErrorCode::NotOrthogonal);
    CHECK(code_of([&] { (void)ur4(sigma_x(), Matrix::identity(3), StateVector::basis(2, 0), Metric::identity(2),
                                  Formalism::Plain); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("a supplied psi_perp is rescaled to unit G-norm") {
    const Metric id = Metric::identity(2);
    const auto e0 = StateVector::basis(2, 0);
    const auto a = ur3(sigma_x(), sigma_y(), e0, StateVector{0.0, 5.0}, id, Formalism::Plain, SignChoice::Max);
    const auto b = ur3(sigma_x(), sigma_y(), e0, std::nullopt, id, Formalism::Plain, SignChoice::Max);
    CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-15));
}

TEST_CASE("saturation: psi an eigenstate of B, perp the AV partner of A") {
    std::mt19937_64 rng(12);
    for (const Metric& m : {Metric::identity(2), g_s(), g_b()}) {
        for (int t = 0; t < 200; ++t) {
            const Matrix a = oracle::random_matrix(rng);
            const Matrix b0 = oracle::random_matrix(rng);
            const auto sys = eig2(b0);
            const StateVector psi = g_normalize(sys.right[t % 2], m);
            const auto av = av_orthogonal_state(a, psi, m);
            const double var_a = g_variance(a, psi, m);
            for (SignChoice s : {SignChoice::Plus, SignChoice::Minus}) {
                const auto e = ur3(a, b0, psi, av.psi_perp, m, Formalism::GMetric, s);
                CHECK(std::abs(e.gap) <= 1e-10);
                CHECK(e.lhs == doctest::Approx(var_a).epsilon(1e-9));
            }
            const auto e4 = ur4(a, b0, psi, m, Formalism::GMetric);
            CHECK(e4.rhs >= 0.5 * var_a - 1e-10);
        }
    }
}

TEST_CASE("Hermitian limit matches the textbook forms") {
    std::mt19937_64 rng(314);
    const Metric id = Metric::identity(2);
    for (int t = 0; t < 500; ++t) {
        const Matrix a = oracle::random_hermitian(rng);
        const Matrix b = oracle::random_hermitian(rng);
        const StateVector psi = oracle::random_state(rng, id.matrix());
        const auto v = oracle::to_vec(psi);
        const auto o = oracle::hermitian_forms(a, b, v);
        for (Formalism f : {Formalism::Plain, Formalism::GMetric, Formalism::GoodObservable}) {
            const auto ev = evaluate_all(a, b, psi, id, f);
            for (const auto& e : ev) CHECK(std::abs(e.lhs - o.lhs) <= 1e-12);
            CHECK(std::abs(ev[0].rhs - o.ur1) <= 1e-12);
            CHECK(std::abs(ev[1].rhs - o.ur2) <= 1e-12);
            CHECK(std::abs(ev[2].rhs - o.ur3) <= 1e-12);
            CHECK(std::abs(ev[3].rhs - o.ur4) <= 1e-12);
        }
        const double va = oracle::herm_variance(a, v), vb = oracle::herm_variance(b, v);
        CHECK(va * vb >= oracle::robertson_rhs(a, b, v) - 1e-12);
    }
}

TEST_CASE("quadratic-form certificates") {
    std::mt19937_64 rng(15);
    const Metric id = Metric::identity(2);
    for (int t = 0; t < 200; ++t) {
        const Matrix a = oracle::random_hermitian(rng);
        const Matrix b = oracle::random_hermitian(rng);
        const StateVector psi = oracle::random_state(rng, id.matrix());
        const auto v = oracle::to_vec(psi);
        const double va = oracle::herm_variance(a, v), vb = oracle::herm_variance(b, v);
        const Vec ad = sub(oracle::mul(a, v), v, oracle::herm_mean(a, v));
        const Vec bd = sub(oracle::mul(b, v), v, oracle::herm_mean(b, v));
        const double r1 = ur1(a, b, psi, id, Formalism::Plain).rhs;
        const double r2 = ur2(a, b, psi, id, Formalism::Plain).rhs;
        for (double al : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
            Vec x(2), y(2);
            for (std::size_t k = 0; k < 2; ++k) {
                x[k] = ad[k] + i1 * al * bd[k];
                y[k] = ad[k] + al * bd[k];
            }
            const double nx = oracle::norm2(x), ny = oracle::norm2(y);
            CHECK(nx >= -1e-12);
            CHECK(ny >= -1e-12);
            CHECK(std::abs(nx - (va + al * al * vb - al * r1)) <= 1e-12);
            CHECK(std::abs(ny - (va + al * al * vb + al * r2)) <= 1e-12);
        }
    }
}

TEST_CASE("positivity, dominance and parallelogram on random non-Hermitian inputs") {
    std::mt19937_64 rng(2718);
    for (const Metric& m : {Metric::identity(2), g_s(), g_b()}) {
        for (int t = 0; t < 400; ++t) {
            const Matrix a = oracle::random_matrix(rng);
            const Matrix b = oracle::random_matrix(rng);
            const StateVector psi = oracle::random_state(rng, m.matrix());
            for (Formalism f : kAll) {
                const StateVector p = f == Formalism::Plain ? g_normalize(psi, Metric::identity(2)) : psi;
                const auto ev = evaluate_all(a, b, p, m, f);
                for (const auto& e : ev) {
                    CHECK(e.gap >= -1e-9);
                    CHECK(e.holds);
                    CHECK(e.lhs >= -1e-9);
                }
                CHECK(ev[2].gap <= ev[0].gap + 1e-12);
                const auto c = ur_combined(a, b, p, m, f);
                CHECK(c.rhs >= ev[0].rhs);
                CHECK(c.rhs >= ev[1].rhs);
            }
            const double lhs = 2 * g_variance(a, psi, m) + 2 * g_variance(b, psi, m);
            const double rhs = g_variance(a + b, psi, m) + g_variance(a - b, psi, m);
            CHECK(std::abs(lhs - rhs) <= 1e-10);
        }
    }
}

TEST_CASE("UR3 is saturated by the 2D complement") {
    std::mt19937_64 rng(6);
    for (const Metric& m : {Metric::identity(2), g_b()}) {
        for (int t = 0; t < 100; ++t) {
            const Matrix a = oracle::random_matrix(rng), b = oracle::random_matrix(rng);
            const StateVector psi = oracle::random_state(rng, m.matrix());
            for (SignChoice s : {SignChoice::Plus, SignChoice::Minus}) {
                CHECK(std::abs(ur3(a, b, psi, std::nullopt, m, Formalism::GMetric, s).gap) <= 1e-10);
            }
        }
    }
}

TEST_CASE("GMetric and GoodObservable agree for good pairs") {
    std::mt19937_64 rng(99);
    for (const Metric& m : {Metric::identity(2), g_s(), g_b()}) {
        for (int t = 0; t < 300; ++t) {
            const Matrix a = oracle::random_good_observable(rng, m.matrix());
            const Matrix b = oracle::random_good_observable(rng, m.matrix());
            const StateVector psi = oracle::random_state(rng, m.matrix());
            const auto g = evaluate_all(a, b, psi, m, Formalism::GMetric);
            const auto o = evaluate_all(a, b, psi, m, Formalism::GoodObservable);
            for (std::size_t k = 0; k < 4; ++k) {
                CHECK(std::abs(g[k].lhs - o[k].lhs) <= 1e-9);
                CHECK(std::abs(g[k].rhs - o[k].rhs) <= 1e-9);
            }
            CHECK(g[2].branch == o[2].branch);

            // UR4 branch value is 1/2 Delta(A +- B)_G^2.
            const double best = 0.5 * std::max(g_variance(a + b, psi, m), g_variance(a - b, psi, m));
            CHECK(std::abs(o[3].rhs - best) <= 1e-9);
        }
    }
}

TEST_CASE("Example 2 defaults in both phases") {
    for (const auto& cfg : {Example2Config::symmetric_defaults(), Example2Config::broken_defaults()}) {
        for (double al : {0.0, 1.0, 2.5, 4.0}) {
            Example2Config c = cfg;
            c.alpha = al;
            const Problem prob = build_example2(c);
            for (const auto& e : evaluate_problem(prob, Formalism::GoodObservable)) CHECK(e.holds);
            for (const auto& e : evaluate_problem(prob, Formalism::GMetric)) CHECK(e.holds);
        }
    }
}

TEST_CASE("three-dimensional inputs") {
    std::mt19937_64 rng(3);
    const Metric id = Metric::identity(3);
    for (int t = 0; t < 200; ++t) {
        const Matrix a = oracle::random_matrix(rng, 3), b = oracle::random_matrix(rng, 3);
        const StateVector psi = oracle::random_state(rng, id.matrix());
        const auto ev = evaluate_all(a, b, psi, id, Formalism::GMetric);
        for (const auto& e : ev) CHECK(e.gap >= -1e-9);
        CHECK(ev[2].gap <= ev[0].gap + 1e-12);
    }
}

TEST_CASE("enum names") {
    CHECK(to_string(Relation::UR3) == "UR3");
    CHECK(to_string(Formalism::GoodObservable) == "good_observable");
    CHECK(to_string(Branch::Minus) == "minus");
    CHECK(parse_formalism("good") == Formalism::GoodObservable);
    CHECK(parse_formalism("gmetric") == Formalism::GMetric);
    CHECK_FALSE(parse_formalism("dirac").has_value());
}
