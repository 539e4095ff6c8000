#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fbq {

// Error taxonomy shared by the whole library. The CLI maps these onto
// distinct exit codes.
class InvalidParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalFailureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ThresholdUnboundedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rates and payoff parameters of the joining game.
struct ModelParams {
    double lambda = 0.0;        // arrival rate
    double mu = 0.0;            // service rate
    double q = 1.0;             // service success probability
    double alpha = 0.0;         // discount / killing rate
    double v = 0.0;             // admission fee
    double reward_scale = 1.0;  // multiplier R on the discounted reward

    void validate() const {
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw InvalidParameterError("lambda must be positive and finite");
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw InvalidParameterError("mu must be positive and finite");
        if (!(q > 0.0 && q <= 1.0))
            throw InvalidParameterError("q must lie in (0, 1]");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw InvalidParameterError("alpha must be nonnegative and finite");
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidParameterError("v must be nonnegative and finite");
        if (!(reward_scale > 0.0) || !std::isfinite(reward_scale))
            throw InvalidParameterError("reward_scale must be positive and finite");
    }
};

inline constexpr double kDefaultMaxThreshold = 64.0;

/// Threshold strategy T(x): join with probability 1 at positions <= n,
/// probability p = x - n at position n+1, never beyond.
class ThresholdStrategy {
public:
    explicit ThresholdStrategy(double x, double x_max = kDefaultMaxThreshold) {
        if (!std::isfinite(x) || x < 0.0)
            throw InvalidParameterError("threshold x must be nonnegative and finite");
        if (x > x_max)
            throw InvalidParameterError("threshold x = " + std::to_string(x) +
                                        " exceeds x_max = " + std::to_string(x_max));
        x_ = x;
        n_ = static_cast<int>(std::floor(x));
        p_ = x - static_cast<double>(n_);
    }

    double x() const { return x_; }
    int floor_part() const { return n_; }   // n = floor(x)
    double join_frac() const { return p_; } // p = x - n, in [0, 1)

    /// u(i): probability that an arriving customer takes position i.
    double joining_prob(int position) const {
        if (position <= n_) return 1.0;
        if (position == n_ + 1) return p_;
        return 0.0;
    }

private:
    double x_;
    int n_;
    double p_;
};

/// Triangular state space {(i, j) : 1 <= i <= j <= floor(x)+1} with level j
/// (total customers) holding j phases (tagged position i). Flat indices are
/// 0-based: state (i, j) sits at j(j-1)/2 + i - 1.
struct StateIndex {
    int num_levels = 0;
    int total = 0;

    explicit StateIndex(const ThresholdStrategy& s)
        : num_levels(s.floor_part() + 1),
          total((s.floor_part() + 1) * (s.floor_part() + 2) / 2) {}

    explicit StateIndex(int levels)
        : num_levels(levels), total(levels * (levels + 1) / 2) {}

    static int flat(int i, int j) { return j * (j - 1) / 2 + i - 1; }

    /// Inverse of flat(); k is 0-based.
    std::pair<int, int> unflat(int k) const {
        int j = static_cast<int>((std::sqrt(8.0 * k + 1.0) - 1.0) / 2.0) + 1;
        while (j * (j - 1) / 2 > k) --j;
        while (j * (j + 1) / 2 <= k) ++j;
        int i = k - j * (j - 1) / 2 + 1;
        return {i, j};
    }
};

enum class CaseTag { N, R };

inline const char* to_string(CaseTag c) { return c == CaseTag::N ? "N" : "R"; }

} // namespace fbq
