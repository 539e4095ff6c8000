#include "fbq/stationary.hpp"

#include <numeric>

#include "fbq/sojourn.hpp"
#include "fbq/solver.hpp"

namespace fbq {

StationaryDistribution stationary_distribution(const ModelParams& pr, const ThresholdStrategy& s,
                                               CaseTag kind) {
    pr.validate();
    const int n = s.floor_part();
    const double p = s.join_frac();

    std::vector<double> pi(n + 2);
    pi[0] = 1.0;
    for (int j = 1; j <= n + 1; ++j) {
        const double birth = pr.lambda * s.joining_prob(j);
        double death = pr.mu * pr.q;
        if (kind == CaseTag::R && j == n + 1)
            death = pr.mu * (pr.q + (1.0 - pr.q) * (1.0 - p));
        pi[j] = pi[j - 1] * birth / death;
    }
    const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& v : pi) v /= total;
    return {std::move(pi), kind};
}

double stationary_payoff(const ModelParams& pr, const ThresholdStrategy& s, CaseTag kind) {
    const auto pi = stationary_distribution(pr, s, kind);
    const auto dv = discount_vector(pr, s, kind);
    double V = 0.0;
    for (int i = 0; i <= s.floor_part(); ++i) {
        const double u = s.joining_prob(i + 1);
        if (u == 0.0) continue;
        V += pi.probs[i] * u * (pr.reward_scale * dv.at(i + 1, i + 1) - pr.v);
    }
    return V;
}

double stationary_payoff_deadline(const ModelParams& pr, const ThresholdStrategy& s, double gamma,
                                  double xi) {
    const auto pi = stationary_distribution(pr, s, CaseTag::N);
    double V = 0.0;
    for (int i = 0; i <= s.floor_part(); ++i) {
        const double u = s.joining_prob(i + 1);
        if (u == 0.0) continue;
        const double t[1] = {xi};
        const double phi = sojourn_cdf(pr, s, i + 1, t)[0];
        V += pi.probs[i] * u * (phi - gamma);
    }
    return V;
}

} // namespace fbq
