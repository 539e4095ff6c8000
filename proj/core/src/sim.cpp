#include "fbq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fbq/rng.hpp"

namespace fbq {

namespace {

void validate(const SimConfig& cfg) {
    cfg.params.validate();
    if (cfg.replications < 1) throw InvalidParameterError("replications must be >= 1");
}

// One tagged-customer sojourn; returns the sojourn time, or stops early and
// returns +inf if the accumulated time passes `kill_time`.
double run_sojourn(const SimConfig& cfg, const ThresholdStrategy& s, int i, int j, Xoshiro256& rng,
                   double kill_time) {
    const ModelParams& pr = cfg.params;
    const int n = s.floor_part();
    const double p = s.join_frac();
    const double total_rate = pr.lambda + pr.mu;
    const double p_arrival = pr.lambda / total_rate;

    double w = 0.0;
    for (;;) {
        w += rng.exponential(total_rate);
        if (w >= kill_time) return std::numeric_limits<double>::infinity();
        if (rng.bernoulli(p_arrival)) {
            if (rng.bernoulli(s.joining_prob(j + 1))) ++j;
        } else if (i == 1) {
            if (rng.bernoulli(pr.q)) return w; // tagged served successfully
            i = j;                             // failed; rejoin at the end
        } else {
            const bool success = rng.bernoulli(pr.q);
            bool departs = success;
            if (!success && cfg.kind == CaseTag::R && j == n + 1)
                departs = rng.bernoulli(1.0 - p); // served-but-failed customer reneges
            --i;
            if (departs) --j;
        }
    }
}

} // namespace

SimEstimate simulate_tagged(const SimConfig& cfg, int start_position, int start_total,
                            bool collect_samples) {
    validate(cfg);
    ThresholdStrategy s(cfg.x);
    if (start_position < 1 || start_position > start_total || start_total > s.floor_part() + 1)
        throw InvalidParameterError("start state must satisfy 1 <= i <= j <= floor(x)+1");

    SimEstimate est;
    est.n = cfg.replications;
    if (collect_samples) est.samples.reserve(cfg.replications);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t r = 0; r < cfg.replications; ++r) {
        auto rng = Xoshiro256::substream(cfg.seed, r);
        const double w = run_sojourn(cfg, s, start_position, start_total, rng,
                                     std::numeric_limits<double>::infinity());
        const double val = std::exp(-cfg.params.alpha * w);
        sum += val;
        sum_sq += val * val;
        if (collect_samples) est.samples.push_back(w);
    }
    const double nn = static_cast<double>(cfg.replications);
    est.point = sum / nn;
    const double var = std::max(0.0, sum_sq / nn - est.point * est.point);
    est.std_error = std::sqrt(var / nn);
    return est;
}

SimEstimate simulate_killed(const SimConfig& cfg, int start_position) {
    validate(cfg);
    if (!(cfg.params.alpha > 0.0))
        throw InvalidParameterError("killed-indicator mode requires alpha > 0");
    ThresholdStrategy s(cfg.x);
    if (start_position < 1 || start_position > s.floor_part() + 1)
        throw InvalidParameterError("start position must lie in 1..floor(x)+1");

    SimEstimate est;
    est.n = cfg.replications;
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < cfg.replications; ++r) {
        auto rng = Xoshiro256::substream(cfg.seed, r);
        const double tau = rng.exponential(cfg.params.alpha);
        const double w = run_sojourn(cfg, s, start_position, start_position, rng, tau);
        if (w < tau) ++hits;
    }
    const double nn = static_cast<double>(cfg.replications);
    est.point = static_cast<double>(hits) / nn;
    est.std_error = std::sqrt(est.point * (1.0 - est.point) / nn);
    return est;
}

OccupancyEstimate simulate_stationary(const SimConfig& cfg, double horizon) {
    validate(cfg);
    if (!(horizon > 0.0)) throw InvalidParameterError("horizon must be positive");
    ThresholdStrategy s(cfg.x);
    const ModelParams& pr = cfg.params;
    const int n = s.floor_part();
    const double p = s.join_frac();
    const int states = n + 2;

    const double warmup = 0.1 * horizon;
    constexpr int kBatches = 50;
    const double batch_len = (horizon - warmup) / kBatches;

    // Per-batch occupancy times and arrival snapshot counts.
    std::vector<std::vector<double>> occ(kBatches, std::vector<double>(states, 0.0));
    std::vector<std::vector<double>> snap(kBatches, std::vector<double>(states, 0.0));

    auto rng = Xoshiro256::substream(cfg.seed, 0);
    const double total_rate = pr.lambda + pr.mu;
    const double p_arrival = pr.lambda / total_rate;
    int j = 0;
    double t = 0.0;
    std::uint64_t events = 0;

    auto credit = [&](double from, double to, int state) {
        from = std::max(from, warmup);
        if (to <= from) return;
        int b0 = std::min(kBatches - 1, static_cast<int>((from - warmup) / batch_len));
        int b1 = std::min(kBatches - 1, static_cast<int>((to - warmup) / batch_len));
        for (int b = b0; b <= b1; ++b) {
            const double lo = std::max(from, warmup + b * batch_len);
            const double hi = std::min(to, warmup + (b + 1) * batch_len);
            if (hi > lo) occ[b][state] += hi - lo;
        }
    };

    while (t < horizon) {
        const double dt = rng.exponential(total_rate);
        const double t_next = std::min(t + dt, horizon);
        credit(t, t_next, j);
        t += dt;
        if (t >= horizon) break;
        ++events;
        if (rng.bernoulli(p_arrival)) {
            if (t >= warmup) {
                const int b = std::min(kBatches - 1, static_cast<int>((t - warmup) / batch_len));
                snap[b][j] += 1.0;
            }
            if (rng.bernoulli(s.joining_prob(j + 1))) ++j;
        } else if (j > 0) {
            const bool success = rng.bernoulli(pr.q);
            bool departs = success;
            if (!success && cfg.kind == CaseTag::R && j == n + 1)
                departs = rng.bernoulli(1.0 - p);
            if (departs) --j;
        } // service clock fires on an empty system: no-op

    }

    OccupancyEstimate out;
    out.horizon = horizon;
    out.events = events;
    out.time_average.assign(states, 0.0);
    out.time_average_se.assign(states, 0.0);
    out.arrival_average.assign(states, 0.0);
    out.arrival_average_se.assign(states, 0.0);

    for (int st = 0; st < states; ++st) {
        double mean_occ = 0.0, mean_snap = 0.0;
        std::vector<double> fo(kBatches), fs(kBatches);
        for (int b = 0; b < kBatches; ++b) {
            double tot_occ = 0.0, tot_snap = 0.0;
            for (int k = 0; k < states; ++k) {
                tot_occ += occ[b][k];
                tot_snap += snap[b][k];
            }
            fo[b] = tot_occ > 0.0 ? occ[b][st] / tot_occ : 0.0;
            fs[b] = tot_snap > 0.0 ? snap[b][st] / tot_snap : 0.0;
            mean_occ += fo[b];
            mean_snap += fs[b];
        }
        mean_occ /= kBatches;
        mean_snap /= kBatches;
        double vo = 0.0, vs = 0.0;
        for (int b = 0; b < kBatches; ++b) {
            vo += (fo[b] - mean_occ) * (fo[b] - mean_occ);
            vs += (fs[b] - mean_snap) * (fs[b] - mean_snap);
        }
        out.time_average[st] = mean_occ;
        out.time_average_se[st] = std::sqrt(vo / (kBatches - 1) / kBatches);
        out.arrival_average[st] = mean_snap;
        out.arrival_average_se[st] = std::sqrt(vs / (kBatches - 1) / kBatches);
    }
    return out;
}

} // namespace fbq
