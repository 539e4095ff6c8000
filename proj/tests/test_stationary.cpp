#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fbq/equilibrium.hpp"
#include "fbq/stationary.hpp"
#include "support.hpp"

using namespace fbq;

TEST_CASE("product form at an integer threshold") {
    // lambda = 1, mu = 0.5, q = 0.3, x = 2: effective service rate mu q = 0.15,
    // ratio lambda / (mu q) = 20/3, and nobody joins at level 3.
    ModelParams pr{1.0, 0.5, 0.3, 0.05, 0.5, 1.0};
    auto pi = stationary_distribution(pr, ThresholdStrategy(2.0), CaseTag::N);
    REQUIRE(pi.probs.size() == 4);
    const double r = 20.0 / 3.0;
    const double total = 1.0 + r + r * r;
    CHECK(pi.probs[0] == doctest::Approx(1.0 / total).epsilon(1e-12));
    CHECK(pi.probs[1] == doctest::Approx(r / total).epsilon(1e-12));
    CHECK(pi.probs[2] == doctest::Approx(r * r / total).epsilon(1e-12));
    CHECK(pi.probs[3] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("detailed balance holds at every level in both cases") {
    std::mt19937_64 g(21);
    for (int rep = 0; rep < 20; ++rep) {
        auto pr = test_support::random_params(g);
        ThresholdStrategy s(test_support::uni(g, 0.0, 6.0));
        const int n = s.floor_part();
        const double p = s.join_frac();
        for (auto kind : {CaseTag::N, CaseTag::R}) {
            auto pi = stationary_distribution(pr, s, kind);
            double sum = 0.0;
            for (double v : pi.probs) sum += v;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            for (int j = 1; j <= n + 1; ++j) {
                const double birth = pr.lambda * s.joining_prob(j);
                double death = pr.mu * pr.q;
                if (kind == CaseTag::R && j == n + 1)
                    death = pr.mu * (pr.q + (1.0 - pr.q) * (1.0 - p));
                CHECK(pi.probs[j - 1] * birth ==
                      doctest::Approx(pi.probs[j] * death).scale(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("reneging thins the top level") {
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    ThresholdStrategy s(2.37);
    auto n_pi = stationary_distribution(pr, s, CaseTag::N);
    auto r_pi = stationary_distribution(pr, s, CaseTag::R);
    CHECK(r_pi.probs.back() < n_pi.probs.back());
}

TEST_CASE("published stationary payoffs at the respective equilibria") {
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    auto en = find_equilibrium_n(pr);
    auto er = find_equilibrium_r(pr);
    CHECK(stationary_payoff(pr, ThresholdStrategy(en.threshold), CaseTag::N) ==
          doctest::Approx(0.034).scale(1.0).epsilon(0.005));
    CHECK(stationary_payoff(pr, ThresholdStrategy(er.threshold), CaseTag::R) ==
          doctest::Approx(0.022).scale(1.0).epsilon(0.005));
}

TEST_CASE("payoff at threshold zero is zero: nobody joins") {
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    CHECK(stationary_payoff(pr, ThresholdStrategy(0.0), CaseTag::N) == 0.0);
    CHECK(stationary_payoff_deadline(pr, ThresholdStrategy(0.0), 0.85, 10.0) == 0.0);
}

TEST_CASE("deadline payoff weights the marginal position by its join fraction") {
    // At an interior deadline equilibrium the marginal term is zero, so
    // perturbing gamma shifts V by exactly the joined mass.
    ModelParams pr{1.0, 2.0, 0.3, 0.0, 0.0, 1.0};
    ThresholdStrategy s(3.6);
    const double v1 = stationary_payoff_deadline(pr, s, 0.85, 10.0);
    const double v2 = stationary_payoff_deadline(pr, s, 0.80, 10.0);
    auto pi = stationary_distribution(pr, s, CaseTag::N);
    double joined_mass = 0.0;
    for (int i = 0; i <= s.floor_part(); ++i) joined_mass += pi.probs[i] * s.joining_prob(i + 1);
    CHECK(v2 - v1 == doctest::Approx(0.05 * joined_mass).epsilon(1e-9));
}
