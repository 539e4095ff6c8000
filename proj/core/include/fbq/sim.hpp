#pragma once

#include <cstdint>
#include <vector>

#include "fbq/model.hpp"

namespace fbq {

struct SimConfig {
    ModelParams params;
    double x = 0.0;                    // common threshold of the other customers
    CaseTag kind = CaseTag::N;
    std::uint64_t replications = 100000;
    std::uint64_t seed = 1;
};

struct SimEstimate {
    double point = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    std::vector<double> samples; // raw sojourn times when requested
};

/// Monte Carlo estimate of E[e^{-alpha W_{i,j}}]: simulate the
/// continuous-time chain from (i, j) until the tagged customer departs.
/// The tagged customer's join is forced; background customers apply u().
SimEstimate simulate_tagged(const SimConfig& config, int start_position, int start_total,
                            bool collect_samples = false);

/// Killing-interpretation estimator: each replication draws an independent
/// Exp(alpha) kill time and reports the indicator {W < tau}.
SimEstimate simulate_killed(const SimConfig& config, int start_position);

struct OccupancyEstimate {
    std::vector<double> time_average;    // long-run fraction of time at each queue length
    std::vector<double> time_average_se; // batch-means standard errors
    std::vector<double> arrival_average; // distribution seen by arrival epochs (PASTA)
    std::vector<double> arrival_average_se;
    double horizon = 0.0;
    std::uint64_t events = 0;
};

/// Long-run occupancy of the queue-length process over [0, horizon], with
/// the first 10% discarded as warm-up.
OccupancyEstimate simulate_stationary(const SimConfig& config, double horizon);

} // namespace fbq
