#pragma once

#include <string>

#include "fbq/model.hpp"

namespace fbq {

enum class EquilibriumKind { ZeroThreshold, IndifferentInterval, Integer, InteriorRoot };

const char* to_string(EquilibriumKind k);

struct EquilibriumResult {
    double threshold = 0.0;
    EquilibriumKind kind = EquilibriumKind::ZeroThreshold;
    int level = 0;            // the m of the theorem's case analysis
    double interval_lo = 0.0; // indifferent-interval bounds
    double interval_hi = 0.0;
    double cert_lo = 0.0;     // payoff certificates at the case boundaries:
    double cert_hi = 0.0;     //   Integer: z_{m+1,m+1}^(m) / z_{m,m}^(m)
                              //   InteriorRoot: z at the final bracket ends
    int iterations = 0;       // bisection steps
};

struct SearchOptions {
    double x_max = kDefaultMaxThreshold;
    double z_tol = 1e-10; // |z| below this is treated as indifference
    double x_tol = 1e-8;  // bisection bracket width
};

/// z_{i,i}^(x): reward_scale * E[e^{-alpha W_{i,i}}] - v under the N-case.
double z_value(const ModelParams& params, const ThresholdStrategy& x, int position);

/// R-case analogue using the reneging matrix.
double z_hat_value(const ModelParams& params, const ThresholdStrategy& x, int position);

EquilibriumResult find_equilibrium_n(const ModelParams& params, const SearchOptions& opt = {});
EquilibriumResult find_equilibrium_r(const ModelParams& params, const SearchOptions& opt = {});

/// Deadline criterion: payoff phi_{m+1}^(x)(xi) - gamma with phi from
/// Laplace inversion; default bisection bracket is looser (1e-3).
EquilibriumResult find_equilibrium_deadline(const ModelParams& params, double gamma, double xi,
                                            SearchOptions opt = {.x_tol = 1e-3});

} // namespace fbq
