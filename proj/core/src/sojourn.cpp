#include "fbq/sojourn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fbq/qbd.hpp"
#include "fbq/solver.hpp"

namespace fbq {

std::complex<double> lst(const ModelParams& pr, const ThresholdStrategy& s, int position,
                         std::complex<double> alpha) {
    if (position < 1 || position > s.floor_part() + 1)
        throw InvalidParameterError("position outside 1..floor(x)+1");
    if (alpha.real() < 0.0)
        throw InvalidParameterError("lst requires Re(alpha) >= 0");
    auto P = build_n_matrix<std::complex<double>>(pr, s, alpha);
    auto g = build_reward_vector<std::complex<double>>(pr, s, alpha);
    auto gamma = solve_level_reduction(P, g);
    return gamma[StateIndex::flat(position, position)];
}

namespace {

// Euler-summation weights xi_k of the Abate-Whitt framework.
std::vector<double> euler_weights(int M) {
    std::vector<double> xi(2 * M + 1, 1.0);
    xi[0] = 0.5;
    xi[2 * M] = std::pow(2.0, -M);
    double binom = 1.0; // C(M, k), updated incrementally
    for (int k = 1; k < M; ++k) {
        binom *= static_cast<double>(M - k + 1) / k;
        xi[2 * M - k] = xi[2 * M - k + 1] + std::pow(2.0, -M) * binom;
    }
    return xi;
}

} // namespace

std::vector<double> sojourn_cdf(const ModelParams& pr, const ThresholdStrategy& s, int position,
                                std::span<const double> times, const InversionOptions& opt) {
    pr.validate();
    for (double t : times)
        if (!(t > 0.0) || !std::isfinite(t))
            throw InvalidParameterError("all evaluation times must be positive and finite");

    const int M = opt.euler_terms;
    const auto xi = euler_weights(M);
    const double a = M * std::numbers::ln10 / 3.0;
    const double lead = std::pow(10.0, M / 3.0);

    std::vector<double> raw(times.size());
    for (std::size_t t_idx = 0; t_idx < times.size(); ++t_idx) {
        const double t = times[t_idx];
        double acc = 0.0;
        double sign = 1.0;
        for (int k = 0; k <= 2 * M; ++k) {
            const std::complex<double> sk(a / t, std::numbers::pi * k / t);
            acc += sign * xi[k] * (lst(pr, s, position, sk) / sk).real();
            sign = -sign;
        }
        raw[t_idx] = lead / t * acc;
    }

    // Clamp and monotonize along increasing time; reject if the numerical
    // ripple exceeds the accuracy target.
    std::vector<std::size_t> order(times.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return times[l] < times[r]; });

    std::vector<double> out(raw);
    double worst = 0.0;
    double running = 0.0;
    for (std::size_t k : order) {
        double val = std::clamp(raw[k], 0.0, 1.0);
        if (val < running) val = running;
        worst = std::max(worst, std::abs(val - raw[k]));
        running = val;
        out[k] = val;
    }
    if (worst > opt.accuracy_target) {
        std::ostringstream msg;
        msg << "Laplace inversion ripple " << worst << " exceeds accuracy target "
            << opt.accuracy_target << " (x = " << s.x() << ", position = " << position << ")";
        throw NumericalFailureError(msg.str());
    }
    return out;
}

} // namespace fbq
