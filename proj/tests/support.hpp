#pragma once

// Shared helpers for the test binaries: deterministic random parameter
// draws and a couple of closed-form oracles.

#include <cmath>
#include <random>

#include "fbq/model.hpp"

namespace test_support {

inline double uni(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

// A well-behaved random instance: all rates bounded away from zero, q and
// alpha positive so both equilibrium cases are defined.
inline fbq::ModelParams random_params(std::mt19937_64& g) {
    fbq::ModelParams pr;
    pr.lambda = uni(g, 0.2, 2.0);
    pr.mu = uni(g, 0.2, 2.0);
    pr.q = uni(g, 0.1, 1.0);
    pr.alpha = uni(g, 0.02, 0.3);
    pr.v = uni(g, 0.1, 0.9);
    pr.reward_scale = 1.0;
    return pr;
}

// E[e^{-alpha W_{1,1}}] when nobody else ever joins (x < 1): the tagged
// customer alone cycles through Exp(mu) services until the q-coin succeeds.
inline double gamma11_closed_form(const fbq::ModelParams& pr) {
    return pr.mu * pr.q / (pr.alpha + pr.mu * pr.q);
}

// E[e^{-alpha W_{2,2}}] at threshold exactly 1 (two levels, no fractional
// join).  Independent of lambda: arrivals above the top level balk.
inline double gamma22_closed_form(const fbq::ModelParams& pr) {
    const double mu = pr.mu, q = pr.q, a = pr.alpha;
    const double num = mu * mu * q * (a + 2.0 * mu * q - mu * q * q);
    const double den =
        (a + mu * q) * (a * a + 2.0 * mu * a + 2.0 * mu * mu * q - mu * mu * q * q);
    return num / den;
}

} // namespace test_support
