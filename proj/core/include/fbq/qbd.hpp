#pragma once

#include <Eigen/Dense>
#include <complex>
#include <ostream>
#include <type_traits>
#include <vector>

#include "fbq/model.hpp"

namespace fbq {

namespace detail {

template <typename Scalar>
double real_part(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, std::complex<double>>)
        return s.real();
    else
        return s;
}

} // namespace detail

/// Substochastic jump-chain matrix of the killed QBD, stored as per-level
/// block triples. Level k (1-based) has k phases; `down[k-1]` is k x (k-1),
/// `diag[k-1]` is k x k, `up[k-1]` is k x (k+1). down[0] and up[last] are
/// empty (no transitions below level 1 or above the top level).
template <typename Scalar>
struct BlockTridiagonal {
    std::vector<Eigen::MatrixX<Scalar>> down, diag, up;

    int num_levels() const { return static_cast<int>(diag.size()); }
    int total_states() const {
        int L = num_levels();
        return L * (L + 1) / 2;
    }

    Eigen::MatrixX<Scalar> assemble_dense() const {
        int N = total_states();
        Eigen::MatrixX<Scalar> P = Eigen::MatrixX<Scalar>::Zero(N, N);
        int row0 = 0;
        for (int k = 1; k <= num_levels(); ++k) {
            if (k > 1)
                P.block(row0, row0 - (k - 1), k, k - 1) = down[k - 1];
            P.block(row0, row0, k, k) = diag[k - 1];
            if (k < num_levels())
                P.block(row0, row0 + k, k, k + 1) = up[k - 1];
            row0 += k;
        }
        return P;
    }

    /// (row, col, value) triplets of the assembled matrix, one per line.
    void dump_csv(std::ostream& os) const {
        auto P = assemble_dense();
        os << "row,col,value\n";
        for (int r = 0; r < P.rows(); ++r)
            for (int c = 0; c < P.cols(); ++c)
                if (P(r, c) != Scalar(0)) os << r << ',' << c << ',' << P(r, c) << '\n';
    }
};

namespace detail {

template <typename Scalar>
void check_alpha(const Scalar& alpha) {
    if (real_part(alpha) < 0.0)
        throw InvalidParameterError("alpha must have nonnegative real part");
}

// Blocks shared by the N- and R-case below the top level.
template <typename Scalar>
BlockTridiagonal<Scalar> build_common(const ModelParams& pr, const ThresholdStrategy& s,
                                      const Scalar& alpha) {
    pr.validate();
    check_alpha(alpha);

    const int n = s.floor_part();
    const int L = n + 1;
    const double p = s.join_frac();
    const Scalar denom = Scalar(pr.lambda + pr.mu) + alpha;
    const Scalar srv_fail = Scalar(pr.mu * (1.0 - pr.q)) / denom;
    const Scalar srv_ok = Scalar(pr.mu * pr.q) / denom;

    BlockTridiagonal<Scalar> P;
    P.down.resize(L);
    P.diag.resize(L);
    P.up.resize(L);

    for (int k = 1; k <= L; ++k) {
        // A_{-1}: a non-tagged customer departs; row 1 (tagged in service) absorbs.
        if (k > 1) {
            auto& D = P.down[k - 1];
            D = Eigen::MatrixX<Scalar>::Zero(k, k - 1);
            for (int i = 2; i <= k; ++i) D(i - 1, i - 2) = srv_ok;
        }

        // A_0: failed-service feedback cycle plus the arrival self-loop mass
        // at levels floor(x) (balking fraction 1-p) and floor(x)+1 (all balk).
        auto& A0 = P.diag[k - 1];
        A0 = Eigen::MatrixX<Scalar>::Zero(k, k);
        A0(0, k - 1) += srv_fail; // tagged fails, rejoins at the end: (1,j) -> (j,j)
        for (int i = 2; i <= k; ++i) A0(i - 1, i - 2) += srv_fail;
        if (k == n) {
            for (int i = 0; i < k; ++i) A0(i, i) += Scalar(pr.lambda * (1.0 - p)) / denom;
        } else if (k == L) {
            for (int i = 0; i < k; ++i) A0(i, i) += Scalar(pr.lambda) / denom;
        }

        // A_1: an arrival joins; none at the top level.
        if (k < L) {
            auto& U = P.up[k - 1];
            U = Eigen::MatrixX<Scalar>::Zero(k, k + 1);
            const Scalar arr = (k == n) ? Scalar(pr.lambda * p) / denom : Scalar(pr.lambda) / denom;
            for (int i = 0; i < k; ++i) U(i, i) = arr;
        }
    }
    return P;
}

} // namespace detail

/// Jump-chain matrix of the non-reneging case.
template <typename Scalar>
BlockTridiagonal<Scalar> build_n_matrix(const ModelParams& pr, const ThresholdStrategy& s,
                                        const Scalar& alpha) {
    return detail::build_common(pr, s, alpha);
}

/// Jump-chain matrix of the reneging case: identical below the top level;
/// at level floor(x)+1 a served-but-failed customer reneges with
/// probability 1-p.
template <typename Scalar>
BlockTridiagonal<Scalar> build_r_matrix(const ModelParams& pr, const ThresholdStrategy& s,
                                        const Scalar& alpha) {
    auto P = detail::build_common(pr, s, alpha);
    const int n = s.floor_part();
    const int L = n + 1;
    const double p = s.join_frac();
    const Scalar denom = Scalar(pr.lambda + pr.mu) + alpha;

    if (L > 1) {
        auto& D = P.down[L - 1];
        const Scalar leave = Scalar(pr.mu * (pr.q + (1.0 - pr.q) * (1.0 - p))) / denom;
        for (int i = 2; i <= L; ++i) D(i - 1, i - 2) = leave;
    }
    auto& A0 = P.diag[L - 1];
    const Scalar stay = Scalar(pr.mu * (1.0 - pr.q) * p) / denom;
    for (int i = 2; i <= L; ++i) A0(i - 1, i - 2) = stay;
    // The tagged customer's own feedback entry A0(0, L-1) keeps the full
    // mu(1-q) mass: she holds threshold floor(x)+1 and never reneges.
    return P;
}

/// g_alpha: mass mu*q/(alpha+lambda+mu) at the tagged-in-service states (1, j).
template <typename Scalar>
Eigen::VectorX<Scalar> build_reward_vector(const ModelParams& pr, const ThresholdStrategy& s,
                                           const Scalar& alpha) {
    pr.validate();
    detail::check_alpha(alpha);
    const int L = s.floor_part() + 1;
    Eigen::VectorX<Scalar> g = Eigen::VectorX<Scalar>::Zero(L * (L + 1) / 2);
    const Scalar val = Scalar(pr.mu * pr.q) / (alpha + Scalar(pr.lambda + pr.mu));
    for (int j = 1; j <= L; ++j) g[StateIndex::flat(1, j)] = val;
    return g;
}

} // namespace fbq
