#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fbq/equilibrium.hpp"
#include "fbq/stationary.hpp"
#include "support.hpp"

using namespace fbq;

TEST_CASE("published instance, non-reneging case") {
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    auto eq = find_equilibrium_n(pr);
    CHECK(eq.kind == EquilibriumKind::InteriorRoot);
    CHECK(eq.level == 2);
    CHECK(eq.threshold == doctest::Approx(2.37).epsilon(0.005));
    ThresholdStrategy s(eq.threshold);
    CHECK(z_value(pr, s, 1) == doctest::Approx(0.29).epsilon(0.05));
    CHECK(z_value(pr, s, 2) == doctest::Approx(0.12).epsilon(0.05));
    CHECK(z_value(pr, s, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("published instance, reneging case") {
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    auto eq = find_equilibrium_r(pr);
    CHECK(eq.kind == EquilibriumKind::InteriorRoot);
    CHECK(eq.threshold == doctest::Approx(2.84).epsilon(0.005));
    ThresholdStrategy s(eq.threshold);
    CHECK(z_hat_value(pr, s, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("reneging never lowers the willingness to join: zhat >= z") {
    std::mt19937_64 g(11);
    for (int rep = 0; rep < 30; ++rep) {
        auto pr = test_support::random_params(g);
        ThresholdStrategy s(test_support::uni(g, 0.0, 6.0));
        for (int i = 1; i <= s.floor_part() + 1; ++i)
            CHECK(z_hat_value(pr, s, i) >= z_value(pr, s, i) - 1e-12);
    }
}

TEST_CASE("reneging equilibrium threshold dominates: x_hat_e >= x_e") {
    std::mt19937_64 g(12);
    int done = 0;
    while (done < 20) {
        auto pr = test_support::random_params(g);
        SearchOptions opt;
        opt.x_max = 30.0;
        try {
            auto en = find_equilibrium_n(pr, opt);
            auto er = find_equilibrium_r(pr, opt);
            CHECK(er.threshold >= en.threshold - 1e-8);
            ++done;
        } catch (const ThresholdUnboundedError&) {
            // both cases unbounded below the cap; draw again
        }
    }
}

TEST_CASE("fee above the maximal reward forces the zero threshold") {
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 2.5, 2.0}; // v > R >= R * gamma(1,1)
    auto eq = find_equilibrium_n(pr);
    CHECK(eq.kind == EquilibriumKind::ZeroThreshold);
    CHECK(eq.threshold == 0.0);
    CHECK(eq.cert_lo < 0.0);
}

TEST_CASE("indifference at zero produces the unit interval") {
    // Choose v = R * mu q / (alpha + mu q) so z_{1,1}^(0) = 0 exactly.
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 0.0, 2.0};
    pr.v = pr.reward_scale * pr.mu * pr.q / (pr.alpha + pr.mu * pr.q);
    auto eq = find_equilibrium_n(pr);
    CHECK(eq.kind == EquilibriumKind::IndifferentInterval);
    CHECK(eq.interval_lo == 0.0);
    CHECK(eq.interval_hi == 1.0);
}

TEST_CASE("integer equilibria are certified on both sides") {
    ModelParams pr{0.5, 0.7, 0.3, 0.1, 0.5, 1.0};
    auto eq = find_equilibrium_n(pr);
    REQUIRE(eq.kind == EquilibriumKind::Integer);
    CHECK(eq.threshold == static_cast<double>(eq.level));
    CHECK(eq.cert_lo <= 1e-10);  // joining one deeper is unprofitable
    CHECK(eq.cert_hi >= -1e-10); // the marginal position is still worth it
    // Re-evaluate the certificates directly.
    ThresholdStrategy s(eq.threshold);
    CHECK(z_value(pr, s, eq.level + 1) == doctest::Approx(eq.cert_lo).scale(1.0).epsilon(1e-12));
    CHECK(z_value(pr, s, eq.level) == doctest::Approx(eq.cert_hi).scale(1.0).epsilon(1e-12));
}

TEST_CASE("interior roots bracket a sign change of the marginal payoff") {
    std::mt19937_64 g(13);
    int done = 0;
    while (done < 10) {
        auto pr = test_support::random_params(g);
        SearchOptions opt;
        opt.x_max = 30.0;
        try {
            auto eq = find_equilibrium_n(pr, opt);
            if (eq.kind != EquilibriumKind::InteriorRoot) continue;
            // z at threshold - eps positive side, + eps negative side.
            const double eps = 1e-6;
            if (eq.threshold - eps <= eq.level || eq.threshold + eps >= eq.level + 1) continue;
            CHECK(z_value(pr, ThresholdStrategy(eq.threshold - eps), eq.level + 1) > -1e-8);
            CHECK(z_value(pr, ThresholdStrategy(eq.threshold + eps), eq.level + 1) < 1e-8);
            ++done;
        } catch (const ThresholdUnboundedError&) {
        }
    }
}

TEST_CASE("marginal payoff decreases along the scan path") {
    // The scan relies on z_{m+1,m+1}^(x) decreasing in x; spot-check a grid.
    ModelParams pr{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    double prev = 1e300;
    for (int k = 0; k <= 10; ++k) {
        const double x = 2.0 + 0.1 * k;
        const double z = z_value(pr, ThresholdStrategy(x), 3);
        CHECK(z <= prev + 1e-12);
        prev = z;
    }
}

TEST_CASE("unbounded searches are reported, not silently truncated") {
    ModelParams pr{0.4, 0.7, 0.2, 0.0, 0.0, 2.0}; // no killing, free entry
    CHECK_THROWS_AS(find_equilibrium_n(pr), ThresholdUnboundedError);

    ModelParams small_cap{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};
    SearchOptions opt;
    opt.x_max = 1.0; // equilibrium is near 2.37, beyond the cap
    CHECK_THROWS_AS(find_equilibrium_n(small_cap, opt), ThresholdUnboundedError);
}

TEST_CASE("deadline equilibrium of the published caption") {
    ModelParams pr{1.0, 2.0, 0.3, 0.0, 0.0, 1.0};
    auto eq = find_equilibrium_deadline(pr, 0.85, 10.0);
    CHECK(eq.threshold == doctest::Approx(3.6).epsilon(0.015));
}

TEST_CASE("deadline parameter validation") {
    ModelParams pr{1.0, 2.0, 0.3, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(find_equilibrium_deadline(pr, 1.5, 10.0), InvalidParameterError);
    CHECK_THROWS_AS(find_equilibrium_deadline(pr, 0.85, -1.0), InvalidParameterError);
}
