#pragma once

#include <vector>

#include "fbq/model.hpp"

namespace fbq {

/// Stationary queue-length distribution over 0..floor(x)+1 seen by
/// arrivals (PASTA).
struct StationaryDistribution {
    std::vector<double> probs;
    CaseTag kind = CaseTag::N;
};

/// Product-form solution of the birth-death balance equations. Births at
/// rate lambda * u(j+1); deaths at rate mu*q, except the R-case top level
/// where a served-but-failed customer also reneges with probability 1-p.
StationaryDistribution stationary_distribution(const ModelParams& params,
                                               const ThresholdStrategy& x, CaseTag kind);

/// Stationary expected individual payoff V(x): the pi-weighted average of
/// joining payoffs, each state weighted by its joining probability u(i+1).
double stationary_payoff(const ModelParams& params, const ThresholdStrategy& x, CaseTag kind);

/// Deadline analogue with per-state payoff phi_{i+1}(xi) - gamma (N-case).
double stationary_payoff_deadline(const ModelParams& params, const ThresholdStrategy& x,
                                  double gamma, double xi);

} // namespace fbq
