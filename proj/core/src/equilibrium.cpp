#include "fbq/equilibrium.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "fbq/qbd.hpp"
#include "fbq/sojourn.hpp"
#include "fbq/solver.hpp"

namespace fbq {

const char* to_string(EquilibriumKind k) {
    switch (k) {
    case EquilibriumKind::ZeroThreshold: return "zero-threshold";
    case EquilibriumKind::IndifferentInterval: return "indifferent-interval";
    case EquilibriumKind::Integer: return "integer";
    case EquilibriumKind::InteriorRoot: return "interior-root";
    }
    return "?";
}

namespace {

double payoff_at(const ModelParams& pr, const ThresholdStrategy& s, int position, CaseTag kind) {
    if (position < 1 || position > s.floor_part() + 1)
        throw InvalidParameterError("position " + std::to_string(position) +
                                    " outside 1..floor(x)+1");
    auto dv = discount_vector(pr, s, kind);
    return pr.reward_scale * dv.at(position, position) - pr.v;
}

// Case scan of the equilibrium theorems. `payoff(m, x)` is the expected
// payoff of a customer joining at position m+1 when everyone else uses
// threshold x; it is continuous and strictly decreasing in both arguments.
EquilibriumResult scan(const std::function<double(int, double)>& payoff,
                       const SearchOptions& opt) {
    EquilibriumResult res;
    const double s0 = payoff(0, 0.0);
    if (s0 < -opt.z_tol) {
        res.kind = EquilibriumKind::ZeroThreshold;
        res.threshold = 0.0;
        res.cert_lo = res.cert_hi = s0;
        return res;
    }
    if (std::abs(s0) <= opt.z_tol) {
        res.kind = EquilibriumKind::IndifferentInterval;
        res.interval_lo = 0.0;
        res.interval_hi = 1.0;
        res.threshold = 0.5; // midpoint convention
        res.cert_lo = res.cert_hi = s0;
        return res;
    }

    double prev_end = s0; // payoff(m-1, m) = z_{m,m}^(m) entering iteration m
    const int m_cap = static_cast<int>(std::floor(opt.x_max));
    for (int m = 1; m <= m_cap; ++m) {
        const double start = payoff(m, static_cast<double>(m)); // z_{m+1,m+1}^(m)
        if (start <= opt.z_tol) {
            if (prev_end < -opt.z_tol)
                throw NumericalFailureError("equilibrium scan lost monotonicity at m = " +
                                            std::to_string(m));
            res.kind = EquilibriumKind::Integer;
            res.level = m;
            res.threshold = static_cast<double>(m);
            res.cert_lo = start;    // z_{m+1,m+1}^(m) <= 0
            res.cert_hi = prev_end; // z_{m,m}^(m) >= 0
            return res;
        }
        const double end = payoff(m, static_cast<double>(m + 1)); // z_{m+1,m+1}^(m+1)
        if (end < -opt.z_tol) {
            double lo = static_cast<double>(m), hi = static_cast<double>(m + 1);
            double f_lo = start, f_hi = end;
            int it = 0;
            while (hi - lo > opt.x_tol) {
                const double mid = 0.5 * (lo + hi);
                const double f = payoff(m, mid);
                ++it;
                if (std::abs(f) <= opt.z_tol) {
                    lo = hi = mid;
                    f_lo = f_hi = f;
                    break;
                }
                if (f > 0.0) {
                    lo = mid;
                    f_lo = f;
                } else {
                    hi = mid;
                    f_hi = f;
                }
            }
            res.kind = EquilibriumKind::InteriorRoot;
            res.level = m;
            res.threshold = 0.5 * (lo + hi);
            if (res.threshold > opt.x_max)
                throw ThresholdUnboundedError("equilibrium root " + std::to_string(res.threshold) +
                                              " exceeds x_max = " + std::to_string(opt.x_max));
            res.cert_lo = f_lo;
            res.cert_hi = f_hi;
            res.iterations = it;
            return res;
        }
        prev_end = end;
    }
    throw ThresholdUnboundedError(
        "no equilibrium below x_max = " + std::to_string(opt.x_max) +
        "; marginal payoff still positive (v or alpha too small for the cap)");
}

} // namespace

double z_value(const ModelParams& pr, const ThresholdStrategy& s, int position) {
    return payoff_at(pr, s, position, CaseTag::N);
}

double z_hat_value(const ModelParams& pr, const ThresholdStrategy& s, int position) {
    return payoff_at(pr, s, position, CaseTag::R);
}

EquilibriumResult find_equilibrium_n(const ModelParams& pr, const SearchOptions& opt) {
    pr.validate();
    // The scan probes thresholds up to one level past the cap; the cap on
    // the returned equilibrium is enforced inside scan().
    return scan(
        [&](int m, double x) { return z_value(pr, ThresholdStrategy(x, opt.x_max + 1.0), m + 1); },
        opt);
}

EquilibriumResult find_equilibrium_r(const ModelParams& pr, const SearchOptions& opt) {
    pr.validate();
    // At integer x the reneging matrix P-hat^(floor(x)+1, x) yields
    // z-hat values equal to the theorem's boundary quantities for all
    // positions <= floor(x), so one builder serves the whole scan.
    return scan(
        [&](int m, double x) {
            return z_hat_value(pr, ThresholdStrategy(x, opt.x_max + 1.0), m + 1);
        },
        opt);
}

EquilibriumResult find_equilibrium_deadline(const ModelParams& pr, double gamma, double xi,
                                            SearchOptions opt) {
    pr.validate();
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw InvalidParameterError("gamma must lie in [0, 1]");
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw InvalidParameterError("xi must be positive and finite");

    // Bisection revisits nearby thresholds; cache the inversions.
    std::map<std::pair<double, int>, double> cache;
    auto phi = [&](double x, int position) {
        const auto key = std::make_pair(x, position);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        ThresholdStrategy s(x, opt.x_max + 1.0);
        const double t[1] = {xi};
        const double val = sojourn_cdf(pr, s, position, t)[0];
        cache.emplace(key, val);
        return val;
    };
    return scan([&](int m, double x) { return phi(x, m + 1) - gamma; }, opt);
}

} // namespace fbq
