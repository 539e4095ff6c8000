#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fbq/model.hpp"
#include "fbq/qbd.hpp"

namespace fbq {

namespace detail {

template <typename Scalar>
void check_residual(const Eigen::MatrixX<Scalar>& ImP, const Eigen::VectorX<Scalar>& sol,
                    const Eigen::VectorX<Scalar>& rhs) {
    const double res = (ImP * sol - rhs).template lpNorm<Eigen::Infinity>();
    const double scale = rhs.template lpNorm<Eigen::Infinity>();
    if (!(res <= 1e-12 * scale))
        throw NumericalFailureError("linear solve residual " + std::to_string(res) +
                                    " exceeds 1e-12 * ||g||");
}

} // namespace detail

/// Direct solve of (I - P) y = rhs on the assembled dense matrix.
template <typename Scalar>
Eigen::VectorX<Scalar> solve_dense(const BlockTridiagonal<Scalar>& P,
                                   const Eigen::VectorX<Scalar>& rhs) {
    Eigen::MatrixX<Scalar> ImP =
        Eigen::MatrixX<Scalar>::Identity(P.total_states(), P.total_states()) - P.assemble_dense();
    Eigen::PartialPivLU<Eigen::MatrixX<Scalar>> lu(ImP);
    Eigen::VectorX<Scalar> sol = lu.solve(rhs);
    detail::check_residual(ImP, sol, rhs);
    return sol;
}

/// Level-reduction solve of (I - P) y = rhs: backward elimination of the
/// block-tridiagonal structure (U^(j) = A0^(j) + A1^(j) G^(j+1),
/// G^(j) = (I - U^(j))^-1 A_{-1}^(j)) followed by forward substitution.
/// Cost is cubic per level instead of cubic in the whole triangle.
template <typename Scalar>
Eigen::VectorX<Scalar> solve_level_reduction(const BlockTridiagonal<Scalar>& P,
                                             const Eigen::VectorX<Scalar>& rhs) {
    using Mat = Eigen::MatrixX<Scalar>;
    using Vec = Eigen::VectorX<Scalar>;
    const int L = P.num_levels();

    auto seg = [&](const Vec& v, int j) -> Vec { // level j slice, j 1-based
        return v.segment(j * (j - 1) / 2, j);
    };

    std::vector<Eigen::PartialPivLU<Mat>> lu(L);    // factors of I - U^(j)
    std::vector<Mat> G(L);                          // G^(j), defined for j >= 2
    std::vector<Vec> h(L);                          // modified right-hand sides

    Mat U = P.diag[L - 1];
    h[L - 1] = seg(rhs, L);
    lu[L - 1] = Eigen::PartialPivLU<Mat>(Mat::Identity(L, L) - U);
    if (L > 1) G[L - 1] = lu[L - 1].solve(P.down[L - 1]);
    for (int j = L - 1; j >= 1; --j) {
        U = P.diag[j - 1] + P.up[j - 1] * G[j];
        h[j - 1] = seg(rhs, j) + P.up[j - 1] * lu[j].solve(h[j]);
        lu[j - 1] = Eigen::PartialPivLU<Mat>(Mat::Identity(j, j) - U);
        if (j > 1) G[j - 1] = lu[j - 1].solve(P.down[j - 1]);
    }

    Vec sol(P.total_states());
    Vec level = lu[0].solve(h[0]);
    sol.segment(0, 1) = level;
    for (int j = 2; j <= L; ++j) {
        level = lu[j - 1].solve(h[j - 1]) + G[j - 1] * level;
        sol.segment(j * (j - 1) / 2, j) = level;
    }

    const Mat ImP =
        Mat::Identity(P.total_states(), P.total_states()) - P.assemble_dense();
    detail::check_residual(ImP, sol, rhs);
    return sol;
}

/// (I - P)^-1 d: expected visit counts to the states flagged in d before
/// absorption. With d the indicator of the tagged-in-service states,
/// mu q / (alpha + lambda + mu) times this vector is gamma.
template <typename Scalar>
Eigen::VectorX<Scalar> expected_visits(const BlockTridiagonal<Scalar>& P,
                                       const Eigen::VectorX<Scalar>& d) {
    return solve_dense(P, d);
}

enum class SolveMethod { Dense, LevelReduction };

/// Vector of expected discount factors E[e^{-alpha W_{i,j}}], flat-indexed.
struct DiscountVector {
    Eigen::VectorXd values;
    double alpha = 0.0;
    CaseTag kind = CaseTag::N;

    double at(int i, int j) const { return values[StateIndex::flat(i, j)]; }
};

inline DiscountVector discount_vector(const ModelParams& pr, const ThresholdStrategy& s,
                                      CaseTag kind,
                                      SolveMethod method = SolveMethod::LevelReduction) {
    auto P = (kind == CaseTag::N) ? build_n_matrix<double>(pr, s, pr.alpha)
                                  : build_r_matrix<double>(pr, s, pr.alpha);
    auto g = build_reward_vector<double>(pr, s, pr.alpha);
    DiscountVector out;
    out.values = (method == SolveMethod::Dense) ? solve_dense(P, g) : solve_level_reduction(P, g);
    out.alpha = pr.alpha;
    out.kind = kind;
    return out;
}

} // namespace fbq
