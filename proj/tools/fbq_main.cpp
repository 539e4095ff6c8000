// Command-line front end: equilibrium solves, parameter sweeps, sojourn-time
// CDFs, simulation runs, and reproduction of the published numerical tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "fbq/equilibrium.hpp"
#include "fbq/model.hpp"
#include "fbq/sim.hpp"
#include "fbq/sojourn.hpp"
#include "fbq/stationary.hpp"
#include "fbq/solver.hpp"

using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// Exit codes: 0 success, 2 invalid parameters, 3 threshold unbounded,
// 4 numerical failure.
enum ExitCode { kOk = 0, kInvalidParams = 2, kUnbounded = 3, kNumericalFailure = 4 };

struct CommonOpts {
    fbq::ModelParams params;
    std::string case_name = "n";
    double gamma = 0.85;
    double xi = 10.0;
    fbq::SearchOptions search;
    std::string format = "text"; // text | json | csv
    std::string out_path;
    std::uint64_t seed = 1;
    std::uint64_t replications = 1000000;
    int jobs = 1;
};

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--lambda", o.params.lambda, "arrival rate")->required();
    cmd->add_option("--mu", o.params.mu, "service rate")->required();
    cmd->add_option("--q", o.params.q, "service success probability");
    cmd->add_option("--alpha", o.params.alpha, "discount / killing rate");
    cmd->add_option("--v", o.params.v, "admission fee");
    cmd->add_option("--reward", o.params.reward_scale, "reward multiplier R");
    cmd->add_option("--x-max", o.search.x_max, "threshold cap");
    cmd->add_option("--z-tol", o.search.z_tol, "indifference tolerance");
    cmd->add_option("--x-tol", o.search.x_tol, "bisection bracket width");
    cmd->add_option("--format", o.format, "output format: text|json|csv");
    cmd->add_option("--out", o.out_path, "write the report to this path instead of stdout");
}

json config_json(const CommonOpts& o) {
    return json{{"lambda", o.params.lambda}, {"mu", o.params.mu},       {"q", o.params.q},
                {"alpha", o.params.alpha},   {"v", o.params.v},         {"reward", o.params.reward_scale},
                {"case", o.case_name},       {"gamma", o.gamma},        {"xi", o.xi},
                {"x_max", o.search.x_max},   {"z_tol", o.search.z_tol}, {"x_tol", o.search.x_tol},
                {"seed", o.seed},            {"replications", o.replications}};
}

json meta_json(std::chrono::steady_clock::time_point start) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return json{{"version", kVersion}, {"runtime_seconds", secs}};
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out_path);
        f << text;
    }
}

json equilibrium_json(const fbq::EquilibriumResult& r) {
    json j{{"threshold", r.threshold},
           {"kind", fbq::to_string(r.kind)},
           {"level", r.level},
           {"certificates", {r.cert_lo, r.cert_hi}},
           {"iterations", r.iterations}};
    if (r.kind == fbq::EquilibriumKind::IndifferentInterval)
        j["interval"] = {r.interval_lo, r.interval_hi};
    return j;
}

struct SolveOutput {
    fbq::EquilibriumResult eq;
    double payoff = 0.0;
};

SolveOutput run_solve(const CommonOpts& o) {
    SolveOutput s;
    if (o.case_name == "n") {
        s.eq = fbq::find_equilibrium_n(o.params, o.search);
        s.payoff = fbq::stationary_payoff(o.params, fbq::ThresholdStrategy(s.eq.threshold),
                                          fbq::CaseTag::N);
    } else if (o.case_name == "r") {
        s.eq = fbq::find_equilibrium_r(o.params, o.search);
        s.payoff = fbq::stationary_payoff(o.params, fbq::ThresholdStrategy(s.eq.threshold),
                                          fbq::CaseTag::R);
    } else if (o.case_name == "deadline") {
        s.eq = fbq::find_equilibrium_deadline(o.params, o.gamma, o.xi, o.search);
        s.payoff = fbq::stationary_payoff_deadline(
            o.params, fbq::ThresholdStrategy(s.eq.threshold), o.gamma, o.xi);
    } else {
        throw fbq::InvalidParameterError("unknown case: " + o.case_name);
    }
    return s;
}

int cmd_solve(const CommonOpts& o) {
    const auto start = std::chrono::steady_clock::now();
    const auto s = run_solve(o);
    if (o.format == "json") {
        json out{{"config", config_json(o)},
                 {"results", json::array({json{{"equilibrium", equilibrium_json(s.eq)},
                                               {"stationary_payoff", s.payoff}}})},
                 {"meta", meta_json(start)}};
        emit(o, out.dump(2) + "\n");
    } else {
        std::ostringstream t;
        t.precision(10);
        t << "case:        " << o.case_name << "\n"
          << "threshold:   " << s.eq.threshold << "\n"
          << "kind:        " << fbq::to_string(s.eq.kind) << "\n"
          << "level m:     " << s.eq.level << "\n"
          << "certificates: [" << s.eq.cert_lo << ", " << s.eq.cert_hi << "]\n"
          << "bisection iterations: " << s.eq.iterations << "\n"
          << "stationary payoff V: " << s.payoff << "\n";
        emit(o, t.str());
    }
    return kOk;
}

struct SweepAxis {
    std::string name;
    std::vector<double> values;
    bool higher_is_better = false; // direction of "improvement" for the paradox flag
};

int cmd_sweep(const CommonOpts& base, const std::vector<SweepAxis>& axes) {
    const auto start = std::chrono::steady_clock::now();
    if (axes.empty())
        throw fbq::InvalidParameterError("sweep requires at least one --sweep-* axis");

    // Cartesian grid, row-major in the order the axes were given.
    std::size_t rows = 1;
    for (const auto& a : axes) rows *= a.values.size();

    struct Row {
        CommonOpts o;
        std::map<std::string, double> axis_values;
        bool ok = false;
        std::string error;
        double x_e = 0.0, x_hat_e = 0.0, payoff_n = 0.0, payoff_r = 0.0;
    };
    std::vector<Row> table(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        Row& row = table[r];
        row.o = base;
        std::size_t rem = r;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const double val = axes[a].values[rem % axes[a].values.size()];
            rem /= axes[a].values.size();
            row.axis_values[axes[a].name] = val;
            if (axes[a].name == "alpha") row.o.params.alpha = val;
            else if (axes[a].name == "v") row.o.params.v = val;
            else if (axes[a].name == "q") row.o.params.q = val;
            else if (axes[a].name == "gamma") row.o.gamma = val;
            else if (axes[a].name == "xi") row.o.xi = val;
        }
    }

    auto solve_row = [&base](Row& row) {
        try {
            if (base.case_name == "deadline") {
                auto eq = fbq::find_equilibrium_deadline(row.o.params, row.o.gamma, row.o.xi,
                                                         row.o.search);
                row.x_e = eq.threshold;
                row.payoff_n = fbq::stationary_payoff_deadline(
                    row.o.params, fbq::ThresholdStrategy(eq.threshold), row.o.gamma, row.o.xi);
            } else {
                auto en = fbq::find_equilibrium_n(row.o.params, row.o.search);
                auto er = fbq::find_equilibrium_r(row.o.params, row.o.search);
                row.x_e = en.threshold;
                row.x_hat_e = er.threshold;
                row.payoff_n = fbq::stationary_payoff(
                    row.o.params, fbq::ThresholdStrategy(en.threshold), fbq::CaseTag::N);
                row.payoff_r = fbq::stationary_payoff(
                    row.o.params, fbq::ThresholdStrategy(er.threshold), fbq::CaseTag::R);
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    const int jobs = std::max(1, base.jobs);
    if (jobs == 1) {
        for (auto& row : table) solve_row(row);
    } else {
        std::vector<std::future<void>> pending;
        for (std::size_t r = 0; r < rows; ++r) {
            pending.push_back(std::async(std::launch::async, [&, r] { solve_row(table[r]); }));
            if (pending.size() >= static_cast<std::size_t>(jobs)) {
                for (auto& f : pending) f.get();
                pending.clear();
            }
        }
        for (auto& f : pending) f.get();
    }

    // Paradox flag: single-axis sweeps only; flag a row whose swept
    // parameter improved on the previous row while V dropped.
    std::vector<bool> paradox(rows, false);
    if (axes.size() == 1) {
        for (std::size_t r = 1; r < rows; ++r) {
            if (!table[r].ok || !table[r - 1].ok) continue;
            const double prev = axes[0].values[r - 1], cur = axes[0].values[r];
            const bool improved = axes[0].higher_is_better ? cur > prev : cur < prev;
            if (improved && table[r].payoff_n < table[r - 1].payoff_n) paradox[r] = true;
        }
    }

    std::ostringstream t;
    t.precision(10);
    const bool deadline = base.case_name == "deadline";
    if (base.format == "json") {
        json results = json::array();
        for (std::size_t r = 0; r < rows; ++r) {
            json jr{{"ok", table[r].ok}, {"paradox", static_cast<bool>(paradox[r])}};
            for (const auto& [k, v] : table[r].axis_values) jr[k] = v;
            if (table[r].ok) {
                jr["x_e"] = table[r].x_e;
                if (!deadline) jr["x_hat_e"] = table[r].x_hat_e;
                jr["V_n"] = table[r].payoff_n;
                if (!deadline) jr["V_r"] = table[r].payoff_r;
            } else {
                jr["error"] = table[r].error;
            }
            results.push_back(jr);
        }
        json out{{"config", config_json(base)}, {"results", results},
                 {"meta", meta_json(start)}};
        emit(base, out.dump(2) + "\n");
    } else {
        for (const auto& a : axes) t << a.name << ",";
        if (deadline)
            t << "x_e,V,paradox,error\n";
        else
            t << "x_e,x_hat_e,V_n,V_r,paradox,error\n";
        for (std::size_t r = 0; r < rows; ++r) {
            for (const auto& a : axes) t << table[r].axis_values.at(a.name) << ",";
            if (table[r].ok) {
                if (deadline)
                    t << table[r].x_e << "," << table[r].payoff_n;
                else
                    t << table[r].x_e << "," << table[r].x_hat_e << "," << table[r].payoff_n
                      << "," << table[r].payoff_r;
                t << "," << (paradox[r] ? 1 : 0) << ",\n";
            } else {
                if (deadline)
                    t << ",,0," << table[r].error << "\n";
                else
                    t << ",,,,0," << table[r].error << "\n";
            }
        }
        emit(base, t.str());
    }
    return kOk;
}

int cmd_sojourn_cdf(const CommonOpts& o, double x, int position, std::vector<double> times,
                    double tmax, int points) {
    const auto start = std::chrono::steady_clock::now();
    if (times.empty()) {
        if (!(tmax > 0.0) || points < 1)
            throw fbq::InvalidParameterError("provide --times or --tmax/--points");
        for (int k = 1; k <= points; ++k) times.push_back(tmax * k / points);
    }
    fbq::ThresholdStrategy s(x, o.search.x_max);
    auto phi = fbq::sojourn_cdf(o.params, s, position, times);
    if (o.format == "json") {
        json results = json::array();
        for (std::size_t k = 0; k < times.size(); ++k)
            results.push_back(json{{"w", times[k]}, {"phi", phi[k]}});
        json cfg = config_json(o);
        cfg["x"] = x;
        cfg["position"] = position;
        json out{{"config", cfg}, {"results", results}, {"meta", meta_json(start)}};
        emit(o, out.dump(2) + "\n");
    } else {
        std::ostringstream t;
        t.precision(12);
        t << "w,phi\n";
        for (std::size_t k = 0; k < times.size(); ++k) t << times[k] << "," << phi[k] << "\n";
        emit(o, t.str());
    }
    return kOk;
}

int cmd_simulate(const CommonOpts& o, const std::string& mode, double x, int position, int total,
                 double horizon, const std::string& dump_path) {
    const auto start = std::chrono::steady_clock::now();
    fbq::SimConfig cfg{o.params, x, o.case_name == "r" ? fbq::CaseTag::R : fbq::CaseTag::N,
                       o.replications, o.seed};
    json result;
    if (mode == "tagged") {
        const bool dump = !dump_path.empty();
        auto est = fbq::simulate_tagged(cfg, position, total > 0 ? total : position, dump);
        result = {{"estimate", est.point}, {"std_error", est.std_error}, {"n", est.n}};
        if (dump) {
            std::ofstream f(dump_path);
            f.precision(12);
            for (double w : est.samples) f << w << "\n";
        }
    } else if (mode == "killed") {
        auto est = fbq::simulate_killed(cfg, position);
        result = {{"estimate", est.point}, {"std_error", est.std_error}, {"n", est.n}};
    } else if (mode == "stationary") {
        auto occ = fbq::simulate_stationary(cfg, horizon);
        result = {{"time_average", occ.time_average},
                  {"time_average_se", occ.time_average_se},
                  {"arrival_average", occ.arrival_average},
                  {"arrival_average_se", occ.arrival_average_se},
                  {"events", occ.events}};
    } else {
        throw fbq::InvalidParameterError("unknown mode: " + mode);
    }
    json cfg_j = config_json(o);
    cfg_j["x"] = x;
    cfg_j["mode"] = mode;
    json out{{"config", cfg_j}, {"results", json::array({result})}, {"meta", meta_json(start)}};
    emit(o, out.dump(2) + "\n");
    return kOk;
}

// ---- reproduction of the published exhibits ----

struct Check {
    std::string label;
    double computed, expected, tol;
    bool informational = false;
};

int report_checks(const std::string& title, const std::vector<Check>& checks, const CommonOpts& o) {
    std::ostringstream t;
    t.precision(6);
    t << title << "\n";
    bool all_ok = true;
    for (const auto& c : checks) {
        const bool ok = std::abs(c.computed - c.expected) <= c.tol;
        const char* tag = c.informational ? (ok ? "[info ok]" : "[info   ]") : (ok ? "[ok]  " : "[FAIL]");
        t << "  " << tag << " " << c.label << ": computed " << c.computed << "  published "
          << c.expected << "  tol " << c.tol << "\n";
        if (!c.informational && !ok) all_ok = false;
    }
    emit(o, t.str());
    return all_ok ? kOk : kNumericalFailure;
}

int reproduce_table2(CommonOpts o) {
    std::vector<Check> checks;
    const struct {
        double alpha, lambda, mu;
        double xe, xhe, z1, z2, zh1, zh2, vn, vr;
    } cols[2] = {{0.05, 0.4, 0.7, 2.37, 2.84, 0.29, 0.12, 0.27, 0.09, 0.034, 0.022},
                 {0.04, 0.4, 0.55, 2.17, 2.70, 0.28, 0.13, 0.25, 0.09, 0.028, 0.017}};
    for (const auto& c : cols) {
        fbq::ModelParams pr{c.lambda, c.mu, 0.2, c.alpha, 1.0, 2.0};
        auto en = fbq::find_equilibrium_n(pr);
        auto er = fbq::find_equilibrium_r(pr);
        fbq::ThresholdStrategy sn(en.threshold), sr(er.threshold);
        std::ostringstream tag;
        tag << "(alpha=" << c.alpha << ", lambda=" << c.lambda << ", mu=" << c.mu << ") ";
        const std::string pfx = tag.str();
        checks.push_back({pfx + "x_e", en.threshold, c.xe, 0.01});
        checks.push_back({pfx + "x_hat_e", er.threshold, c.xhe, 0.01});
        checks.push_back({pfx + "z_{1,1}", fbq::z_value(pr, sn, 1), c.z1, 0.01});
        checks.push_back({pfx + "z_{2,2}", fbq::z_value(pr, sn, 2), c.z2, 0.01});
        checks.push_back({pfx + "z_{3,3}", fbq::z_value(pr, sn, 3), 0.0, 0.01});
        checks.push_back({pfx + "zhat_{1,1}", fbq::z_hat_value(pr, sr, 1), c.zh1, 0.01});
        checks.push_back({pfx + "zhat_{2,2}", fbq::z_hat_value(pr, sr, 2), c.zh2, 0.01});
        checks.push_back({pfx + "zhat_{3,3}", fbq::z_hat_value(pr, sr, 3), 0.0, 0.01});
        checks.push_back({pfx + "V_N", fbq::stationary_payoff(pr, sn, fbq::CaseTag::N), c.vn, 0.005});
        checks.push_back({pfx + "V_R", fbq::stationary_payoff(pr, sr, fbq::CaseTag::R), c.vr, 0.005});
    }
    return report_checks("Table 2 (R = 2, q = 0.2, v = 1)", checks, o);
}

int reproduce_table1(CommonOpts o) {
    // The published table omits q; q = 0.3 reproduces the threshold rows.
    std::vector<Check> checks;
    const double alphas[4] = {0.1, 0.075, 0.05, 0.025};
    const double xe_alpha[4] = {1.0, 1.48, 2.21, 5.0};
    const double v_alpha[4] = {0.0055, 0.0033, 0.0048, 0.0046};
    for (int k = 0; k < 4; ++k) {
        fbq::ModelParams pr{1.0, 0.5, 0.3, alphas[k], 0.5, 1.0};
        auto eq = fbq::find_equilibrium_n(pr);
        checks.push_back({"alpha=" + std::to_string(alphas[k]) + " x_e", eq.threshold, xe_alpha[k], 0.01});
        checks.push_back({"alpha=" + std::to_string(alphas[k]) + " V",
                          fbq::stationary_payoff(pr, fbq::ThresholdStrategy(eq.threshold),
                                                 fbq::CaseTag::N),
                          v_alpha[k], 0.001, true});
    }
    const double vs[4] = {0.62, 0.6, 0.5, 0.49};
    const double xe_v[4] = {1.13, 1.85, 2.22, 2.53};
    const double v_v[4] = {0.0073, 0.0016, 0.0047, 0.0024};
    for (int k = 0; k < 4; ++k) {
        fbq::ModelParams pr{1.0, 0.5, 0.3, 0.05, vs[k], 1.0};
        auto eq = fbq::find_equilibrium_n(pr);
        checks.push_back({"v=" + std::to_string(vs[k]) + " x_e", eq.threshold, xe_v[k], 0.01});
        checks.push_back({"v=" + std::to_string(vs[k]) + " V",
                          fbq::stationary_payoff(pr, fbq::ThresholdStrategy(eq.threshold),
                                                 fbq::CaseTag::N),
                          v_v[k], 0.001, true});
    }
    return report_checks("Table 1 (lambda = 1, mu = 0.5; q = 0.3 inferred)", checks, o);
}

int reproduce_table3(CommonOpts o) {
    std::vector<Check> checks;
    const double xis[3] = {8.0, 9.0, 10.0};
    const double xes[3] = {3.0, 3.03, 3.61};
    const double vs[3] = {0.4742, 0.8589, 0.5957};
    for (int k = 0; k < 3; ++k) {
        fbq::ModelParams pr{1.0, 2.0, 0.3, 0.0, 0.0, 1.0};
        auto eq = fbq::find_equilibrium_deadline(pr, 0.85, xis[k]);
        checks.push_back({"Xi=" + std::to_string(xis[k]) + " x_e", eq.threshold, xes[k], 0.05});
        checks.push_back({"Xi=" + std::to_string(xis[k]) + " V (aggregate definition unclear)",
                          fbq::stationary_payoff_deadline(
                              pr, fbq::ThresholdStrategy(eq.threshold), 0.85, xis[k]),
                          vs[k], 0.01, true});
    }
    return report_checks("Table 3 (lambda = 1, mu = 2, gamma = 0.85)", checks, o);
}

int reproduce_table4(CommonOpts o) {
    std::vector<Check> checks;
    const struct {
        double q, gamma, xe, V;
    } rows[6] = {{0.3, 0.8, 4.05, 0.8042}, {0.3, 0.85, 3.61, 0.5957}, {0.3, 0.9, 3.0, 0.5014},
                 {0.5, 0.8, 8.0, 0.7983},  {0.5, 0.85, 7.0, 0.8069},  {0.5, 0.9, 6.0, 0.8102}};
    for (const auto& r : rows) {
        fbq::ModelParams pr{1.0, 2.0, r.q, 0.0, 0.0, 1.0};
        auto eq = fbq::find_equilibrium_deadline(pr, r.gamma, 10.0);
        std::ostringstream tag;
        tag << "q=" << r.q << " gamma=" << r.gamma;
        checks.push_back({tag.str() + " x_e", eq.threshold, r.xe, 0.05});
        checks.push_back({tag.str() + " V (aggregate definition unclear)",
                          fbq::stationary_payoff_deadline(
                              pr, fbq::ThresholdStrategy(eq.threshold), r.gamma, 10.0),
                          r.V, 0.01, true});
    }
    return report_checks("Table 4 (lambda = 1, mu = 2, Xi = 10)", checks, o);
}

int reproduce_fig1(CommonOpts o) {
    // Expected discounted reward curves over x in [0, 6] for positions 1..5.
    fbq::ModelParams pr{1.0, 0.5, 0.3, 0.05, 0.0, 1.0};
    std::ostringstream t;
    t.precision(10);
    t << "x,i,expected_discounted_reward\n";
    for (int i = 1; i <= 5; ++i) {
        const double x0 = std::max(0.0, static_cast<double>(i - 1));
        for (double x = x0; x <= 6.0 + 1e-9; x += 0.05) {
            fbq::ThresholdStrategy s(x);
            auto dv = fbq::discount_vector(pr, s, fbq::CaseTag::N);
            t << x << "," << i << "," << dv.at(i, i) << "\n";
        }
    }
    emit(o, t.str());
    return kOk;
}

int reproduce_fig2(CommonOpts o) {
    // Sojourn-time CDF phi_4^{(3.6)} over Xi in (0, 15].
    fbq::ModelParams pr{1.0, 2.0, 0.3, 0.0, 0.0, 1.0};
    fbq::ThresholdStrategy s(3.6);
    std::vector<double> times;
    for (int k = 1; k <= 150; ++k) times.push_back(0.1 * k);
    auto phi = fbq::sojourn_cdf(pr, s, 4, times);
    std::ostringstream t;
    t.precision(10);
    t << "xi,phi\n";
    for (std::size_t k = 0; k < times.size(); ++k) t << times[k] << "," << phi[k] << "\n";
    emit(o, t.str());
    return kOk;
}

int cmd_reproduce(const std::string& exhibit, const CommonOpts& o) {
    if (exhibit == "table1") return reproduce_table1(o);
    if (exhibit == "table2") return reproduce_table2(o);
    if (exhibit == "table3") return reproduce_table3(o);
    if (exhibit == "table4") return reproduce_table4(o);
    if (exhibit == "fig1") return reproduce_fig1(o);
    if (exhibit == "fig2") return reproduce_fig2(o);
    throw fbq::InvalidParameterError("unknown exhibit: " + exhibit +
                                     " (expected table1|table2|table3|table4|fig1|fig2)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"M/M/1 feedback queue with strategic customers: equilibrium thresholds, "
                 "stationary payoffs, sojourn-time distributions, and a simulation oracle"};
    app.require_subcommand(0, 1);

    bool show_config = false;
    app.add_flag("--show-config", show_config, "print the resolved defaults as JSON and exit");

    CommonOpts o;

    auto* solve = app.add_subcommand("solve", "compute the Nash equilibrium threshold");
    add_model_flags(solve, o);
    solve->add_option("--case", o.case_name, "n|r|deadline");
    solve->add_option("--gamma", o.gamma, "deadline tolerance in [0,1]");
    solve->add_option("--xi", o.xi, "deadline time");

    auto* sweep = app.add_subcommand("sweep", "equilibrium solves over a parameter grid");
    add_model_flags(sweep, o);
    sweep->add_option("--case", o.case_name, "n|deadline (n also reports the R-case)");
    sweep->add_option("--gamma", o.gamma, "deadline tolerance");
    sweep->add_option("--xi", o.xi, "deadline time");
    sweep->add_option("--jobs", o.jobs, "concurrent rows");
    std::vector<double> sw_alpha, sw_v, sw_q, sw_gamma, sw_xi;
    sweep->add_option("--sweep-alpha", sw_alpha, "alpha grid")->delimiter(',');
    sweep->add_option("--sweep-v", sw_v, "fee grid")->delimiter(',');
    sweep->add_option("--sweep-q", sw_q, "success-probability grid")->delimiter(',');
    sweep->add_option("--sweep-gamma", sw_gamma, "gamma grid")->delimiter(',');
    sweep->add_option("--sweep-xi", sw_xi, "deadline grid")->delimiter(',');

    auto* scdf = app.add_subcommand("sojourn-cdf", "sojourn-time CDF by Laplace inversion");
    add_model_flags(scdf, o);
    double sc_x = 1.0, sc_tmax = 0.0;
    int sc_pos = 1, sc_points = 0;
    std::vector<double> sc_times;
    scdf->add_option("--x", sc_x, "common threshold")->required();
    scdf->add_option("--position", sc_pos, "joining position")->required();
    scdf->add_option("--times", sc_times, "evaluation times")->delimiter(',');
    scdf->add_option("--tmax", sc_tmax, "right end of a uniform time grid");
    scdf->add_option("--points", sc_points, "number of grid points");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo oracle");
    add_model_flags(sim, o);
    std::string sim_mode = "tagged", sim_dump;
    double sim_x = 1.0, sim_horizon = 100000.0;
    int sim_pos = 1, sim_total = 0;
    sim->add_option("--case", o.case_name, "n|r");
    sim->add_option("--mode", sim_mode, "tagged|killed|stationary");
    sim->add_option("--x", sim_x, "common threshold")->required();
    sim->add_option("--position", sim_pos, "tagged start position");
    sim->add_option("--total", sim_total, "tagged start total (defaults to position)");
    sim->add_option("--replications", o.replications, "replication count");
    sim->add_option("--seed", o.seed, "reproducibility seed");
    sim->add_option("--horizon", sim_horizon, "simulated time for stationary mode");
    sim->add_option("--dump-samples", sim_dump, "write raw sojourn times to this path");

    auto* rep = app.add_subcommand("reproduce", "re-run a published exhibit and compare");
    std::string exhibit;
    rep->add_option("exhibit", exhibit, "table1|table2|table3|table4|fig1|fig2")->required();
    std::string rep_out;
    rep->add_option("--out", rep_out, "write the report/curve data to this path");

    CLI11_PARSE(app, argc, argv);

    if (show_config) {
        json defaults{{"x_max", fbq::kDefaultMaxThreshold},
                      {"z_tol", fbq::SearchOptions{}.z_tol},
                      {"x_tol", fbq::SearchOptions{}.x_tol},
                      {"deadline_x_tol", 1e-3},
                      {"euler_terms", fbq::InversionOptions{}.euler_terms},
                      {"inversion_accuracy_target", fbq::InversionOptions{}.accuracy_target},
                      {"replications", o.replications},
                      {"seed", o.seed},
                      {"version", kVersion}};
        std::cout << defaults.dump(2) << "\n";
        return kOk;
    }

    try {
        if (solve->parsed()) return cmd_solve(o);
        if (sweep->parsed()) {
            std::vector<SweepAxis> axes;
            if (!sw_alpha.empty()) axes.push_back({"alpha", sw_alpha, false});
            if (!sw_v.empty()) axes.push_back({"v", sw_v, false});
            if (!sw_q.empty()) axes.push_back({"q", sw_q, true});
            if (!sw_gamma.empty()) axes.push_back({"gamma", sw_gamma, false});
            if (!sw_xi.empty()) axes.push_back({"xi", sw_xi, true});
            if (o.format == "text") o.format = "csv";
            return cmd_sweep(o, axes);
        }
        if (scdf->parsed()) {
            if (o.format == "text") o.format = "csv";
            return cmd_sojourn_cdf(o, sc_x, sc_pos, sc_times, sc_tmax, sc_points);
        }
        if (sim->parsed()) return cmd_simulate(o, sim_mode, sim_x, sim_pos, sim_total, sim_horizon, sim_dump);
        if (rep->parsed()) {
            CommonOpts ro;
            ro.out_path = rep_out;
            return cmd_reproduce(exhibit, ro);
        }
        std::cout << app.help();
        return kOk;
    } catch (const fbq::InvalidParameterError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kInvalidParams;
    } catch (const fbq::ThresholdUnboundedError& e) {
        std::cerr << "threshold unbounded: " << e.what() << "\n";
        return kUnbounded;
    } catch (const fbq::NumericalFailureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
}
