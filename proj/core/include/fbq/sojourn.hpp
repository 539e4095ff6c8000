#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fbq/model.hpp"

namespace fbq {

/// Laplace-Stieltjes transform E[e^{-alpha W_{i,i}}] at a complex argument,
/// evaluated by solving the N-case Poisson equation with complex alpha.
std::complex<double> lst(const ModelParams& params, const ThresholdStrategy& x, int position,
                         std::complex<double> alpha);

struct InversionOptions {
    int euler_terms = 25;            // M; 2M+1 transform evaluations per time point
    double accuracy_target = 1e-6;   // absolute CDF error bound
};

/// P(W_{i,i} <= w) at each requested time, via Euler-summation inversion of
/// lst(s)/s. Outputs are clamped to [0,1] and monotonized; ripple beyond
/// accuracy_target raises NumericalFailureError.
std::vector<double> sojourn_cdf(const ModelParams& params, const ThresholdStrategy& x,
                                int position, std::span<const double> times,
                                const InversionOptions& opt = {});

} // namespace fbq
