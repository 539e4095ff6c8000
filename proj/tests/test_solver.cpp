#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fbq/qbd.hpp"
#include "fbq/solver.hpp"
#include "support.hpp"

using namespace fbq;

TEST_CASE("single-level closed form: gamma(1,1) = mu q / (alpha + mu q)") {
    std::mt19937_64 g(1);
    for (int rep = 0; rep < 50; ++rep) {
        auto pr = test_support::random_params(g);
        ThresholdStrategy s(test_support::uni(g, 0.0, 1.0 - 1e-9));
        auto dv = discount_vector(pr, s, CaseTag::N);
        CHECK(dv.at(1, 1) ==
              doctest::Approx(test_support::gamma11_closed_form(pr)).epsilon(1e-12));
    }
}

TEST_CASE("two-level closed form at integer threshold x = 1") {
    ModelParams pr{1.0, 0.5, 0.3, 0.05, 0.5, 1.0};
    auto dv = discount_vector(pr, ThresholdStrategy(1.0), CaseTag::N);
    CHECK(dv.at(1, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(dv.at(2, 2) == doctest::Approx(0.6354166666666667).epsilon(1e-12));
    CHECK(dv.at(2, 2) ==
          doctest::Approx(test_support::gamma22_closed_form(pr)).epsilon(1e-12));
}

TEST_CASE("dense and level-reduction solvers agree componentwise") {
    std::mt19937_64 g(2);
    for (int rep = 0; rep < 25; ++rep) {
        auto pr = test_support::random_params(g);
        ThresholdStrategy s(test_support::uni(g, 0.0, 12.0));
        for (auto kind : {CaseTag::N, CaseTag::R}) {
            auto a = discount_vector(pr, s, kind, SolveMethod::Dense);
            auto b = discount_vector(pr, s, kind, SolveMethod::LevelReduction);
            CHECK((a.values - b.values).lpNorm<Eigen::Infinity>() <= 1e-10);
        }
    }
}

TEST_CASE("expected visits to service states times the reward mass is gamma") {
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    ThresholdStrategy s(2.37);
    auto P = build_n_matrix<double>(pr, s, pr.alpha);
    StateIndex idx(s);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(idx.total);
    for (int j = 1; j <= idx.num_levels; ++j) d[StateIndex::flat(1, j)] = 1.0;
    auto visits = expected_visits(P, d);
    auto dv = discount_vector(pr, s, CaseTag::N);
    const double mass = pr.mu * pr.q / (pr.alpha + pr.lambda + pr.mu);
    CHECK((visits * mass - dv.values).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("without killing: jump-chain visit counts and unit discount factors") {
    // At alpha = 0 the tagged customer is eventually served with
    // probability 1, so gamma = 1 everywhere. Her time at the head of the
    // queue takes (lambda+mu)/mu jump steps per service event and 1/q
    // service events on average, so the visit count to the states (1, .)
    // starting from (1, j) is exactly (lambda+mu)/(mu q).
    std::mt19937_64 g(3);
    for (int rep = 0; rep < 10; ++rep) {
        auto pr = test_support::random_params(g);
        pr.alpha = 0.0;
        ThresholdStrategy s(test_support::uni(g, 0.0, 5.0));
        auto P = build_n_matrix<double>(pr, s, 0.0);
        StateIndex idx(s);
        Eigen::VectorXd d = Eigen::VectorXd::Zero(idx.total);
        for (int j = 1; j <= idx.num_levels; ++j) d[StateIndex::flat(1, j)] = 1.0;
        auto visits = expected_visits(P, d);
        const double expected = (pr.lambda + pr.mu) / (pr.mu * pr.q);
        for (int j = 1; j <= idx.num_levels; ++j)
            CHECK(visits[StateIndex::flat(1, j)] == doctest::Approx(expected).epsilon(1e-11));
        auto dv = discount_vector(pr, s, CaseTag::N);
        CHECK((dv.values.array() - 1.0).abs().maxCoeff() <= 1e-11);
    }
}

TEST_CASE("discount factors decrease as alpha grows") {
    ModelParams pr{1.0, 0.5, 0.3, 0.05, 0.5, 1.0};
    ThresholdStrategy s(3.6);
    double prev = 1.0;
    for (double a : {0.01, 0.05, 0.1, 0.5, 2.0}) {
        auto p2 = pr;
        p2.alpha = a;
        auto dv = discount_vector(p2, s, CaseTag::N);
        CHECK(dv.at(4, 4) < prev);
        prev = dv.at(4, 4);
    }
}

TEST_CASE("positions further back have smaller discount factors") {
    // Coupling: a customer behind must outwait everyone ahead.
    std::mt19937_64 g(4);
    for (int rep = 0; rep < 10; ++rep) {
        auto pr = test_support::random_params(g);
        ThresholdStrategy s(test_support::uni(g, 2.0, 8.0));
        for (auto kind : {CaseTag::N, CaseTag::R}) {
            auto dv = discount_vector(pr, s, kind);
            for (int i = 2; i <= s.floor_part() + 1; ++i)
                CHECK(dv.at(i, i) <= dv.at(i - 1, i - 1) + 1e-12);
            for (int j = 2; j <= s.floor_part() + 1; ++j)
                CHECK(dv.at(1, j) <= dv.at(1, j - 1) + 1e-12);
        }
    }
}

TEST_CASE("raising the common threshold cannot help the tagged customer") {
    std::mt19937_64 g(5);
    for (int rep = 0; rep < 10; ++rep) {
        auto pr = test_support::random_params(g);
        const double x1 = test_support::uni(g, 1.0, 5.0);
        const double x2 = x1 + test_support::uni(g, 0.1, 3.0);
        const int i = 1 + static_cast<int>(test_support::uni(g, 0.0, 0.999) * (std::floor(x1) + 1));
        auto a = discount_vector(pr, ThresholdStrategy(x1), CaseTag::N);
        auto b = discount_vector(pr, ThresholdStrategy(x2), CaseTag::N);
        CHECK(b.at(i, i) <= a.at(i, i) + 1e-12);
    }
}

TEST_CASE("singular system raises a numerical failure") {
    // A row of all-zero blocks with unit diagonal makes I - P singular.
    BlockTridiagonal<double> P;
    P.down.resize(1);
    P.diag.resize(1);
    P.up.resize(1);
    P.diag[0] = Eigen::MatrixXd::Ones(1, 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(1);
    CHECK_THROWS_AS(solve_dense(P, rhs), NumericalFailureError);
}
