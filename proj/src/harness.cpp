// SPDX-License-Identifier: Apache-2.0

#include "netmimo/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "netmimo/converse_oracle.hpp"

namespace netmimo {

namespace {

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v.data(), v.size());
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double_field(const std::string& s, const char* what) {
    double v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("bad numeric field for ") + what +
                                    ": " + s);
    return v;
}

NetworkChannel draw_channel(RngStream& rng, int t) {
    NetworkChannel c;
    c.t = t;
    for (int k = 0; k < 2; ++k) c.h1(k) = rng.complex_gaussian();
    for (int k = 0; k < 2; ++k) c.h2(k) = rng.complex_gaussian();
    return c;
}

struct PointModel {
    double P = 1.0;
    bool exponent = true;
    QualityPair qual;
    double sigma1_sq = 0.0;  // physical mode
    double sigma2_sq = 0.0;
    double alpha1_tag = 1.0;
    double alpha2_tag = 1.0;
};

CsitDraw draw_views(const PointModel& m, RngStream& rng) {
    if (m.exponent) return generate_csit_views(m.qual, m.P, rng);
    return generate_csit_views_sigma(m.sigma1_sq, m.sigma2_sq, m.alpha1_tag,
                                     m.alpha2_tag, rng);
}

struct TrialResult {
    double r1 = 0.0;
    double r2 = 0.0;
    long long rejected = 0;
};

TrialResult run_single_trial(Scheme scheme, const PointModel& m, int favored_rx,
                             RngStream& rng) {
    TrialResult out;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        try {
            SchemeOutcome oc;
            switch (scheme) {
                case Scheme::Zf: {
                    const CsitDraw d = draw_views(m, rng);
                    oc = run_zf_scheme(d.channel, d.tx1, d.tx2, m.P);
                    break;
                }
                case Scheme::ZfPerfect: {
                    const CsitDraw d = generate_perfect_views(rng);
                    oc = run_zf_scheme(d.channel, d.tx1, d.tx2, m.P);
                    break;
                }
                case Scheme::Mat: {
                    std::array<NetworkChannel, 3> slots = {
                        draw_channel(rng, 1), draw_channel(rng, 2),
                        draw_channel(rng, 3)};
                    oc = run_mat(slots, m.P);
                    break;
                }
                case Scheme::AmatZf:
                case Scheme::AmatApzf: {
                    std::array<CsitDraw, 3> slots = {
                        draw_views(m, rng), draw_views(m, rng),
                        draw_views(m, rng)};
                    for (int t = 0; t < 3; ++t) slots[t].channel.t = t + 1;
                    oc = run_alpha_mat(slots, m.P,
                                       scheme == Scheme::AmatApzf
                                           ? AmatVariant::Apzf
                                           : AmatVariant::ConvZf,
                                       rng);
                    break;
                }
                case Scheme::Vertex: {
                    const CsitDraw d = draw_views(m, rng);
                    oc = run_vertex_scheme(d, m.P, favored_rx);
                    break;
                }
            }
            out.r1 = oc.rate_rx1;
            out.r2 = oc.rate_rx2;
            return out;
        } catch (const NearSingularEstimate&) {
            ++out.rejected;  // resample the realization from the same stream
        }
    }
    throw std::runtime_error("trial rejected 10000 times in a row");
}

}  // namespace

double snr_db_to_p(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

void SimConfig::validate() const {
    if (mode == Mode::Exponent) {
        if (!(alpha1 >= 0.0 && alpha1 <= 1.0))
            throw ConfigError("alpha1", "must lie in [0, 1]");
        if (!(alpha2 >= 0.0 && alpha2 <= alpha1))
            throw ConfigError("alpha2", "must satisfy 0 <= alpha2 <= alpha1");
    } else {
        if (tau_fb < 0.0) throw ConfigError("tau_fb", "must be >= 0");
        if (tau_bh < 0.0) throw ConfigError("tau_bh", "must be >= 0");
        if (f_d < 0.0) throw ConfigError("f_d", "must be >= 0");
    }
    if (!(snr_db_step > 0.0)) throw ConfigError("snr_db_step", "must be > 0");
    if (snr_db_stop < snr_db_start)
        throw ConfigError("snr_db_stop", "must be >= snr_db_start");
    if (snr_db_start < 0.0)
        throw ConfigError("snr_db_start",
                          "must be >= 0 dB (linear power at least 1)");
    if (trials < 1) throw ConfigError("trials", "must be >= 1");
    if (threads < 1) throw ConfigError("threads", "must be >= 1");
    if (favored_rx != 1 && favored_rx != 2)
        throw ConfigError("favored_rx", "must be 1 or 2");
}

std::vector<double> SimConfig::snr_grid_db() const {
    std::vector<double> grid;
    for (double s = snr_db_start; s <= snr_db_stop + 1e-9; s += snr_db_step)
        grid.push_back(s);
    return grid;
}

ResultTable run_experiment(const SimConfig& cfg, ExperimentDiag* diag) {
    cfg.validate();
    ResultTable table;
    const std::string label = scheme_label(cfg.scheme);

    for (const double snr : cfg.snr_grid_db()) {
        PointModel model;
        model.P = snr_db_to_p(snr);
        if (cfg.mode == SimConfig::Mode::Exponent) {
            model.exponent = true;
            model.qual = QualityPair(cfg.alpha1, cfg.alpha2);
        } else {
            model.exponent = false;
            const DelayProfile profile{cfg.tau_fb, cfg.tau_bh, cfg.f_d};
            model.sigma1_sq = sigma_sq_from_delay(profile, cfg.tau_fb);
            model.sigma2_sq = std::max(
                model.sigma1_sq,
                sigma_sq_from_delay(profile, cfg.tau_fb + cfg.tau_bh));
            model.alpha1_tag = alpha_from_sigma(model.sigma1_sq, model.P);
            model.alpha2_tag = alpha_from_sigma(model.sigma2_sq, model.P);
        }

        const int n = cfg.trials;
        std::vector<double> r1(n), r2(n), sum(n);
        std::vector<long long> rejected(n, 0);

        auto worker = [&](int begin, int end) {
            for (int t = begin; t < end; ++t) {
                RngStream rng(cfg.seed, static_cast<std::uint64_t>(t));
                const TrialResult tr =
                    run_single_trial(cfg.scheme, model, cfg.favored_rx, rng);
                r1[t] = tr.r1;
                r2[t] = tr.r2;
                sum[t] = tr.r1 + tr.r2;
                rejected[t] = tr.rejected;
            }
        };

        const int workers = std::min(cfg.threads, n);
        if (workers <= 1) {
            worker(0, n);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            const int chunk = (n + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const int begin = w * chunk;
                const int end = std::min(n, begin + chunk);
                if (begin >= end) continue;
                pool.emplace_back([&, w, begin, end]() {
                    try {
                        worker(begin, end);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (const auto& err : errors)
                if (err) std::rethrow_exception(err);
        }

        const double mean = pairwise_sum(sum) / n;
        double se = 0.0;
        if (n > 1) {
            std::vector<double> dev(n);
            for (int t = 0; t < n; ++t) dev[t] = (sum[t] - mean) * (sum[t] - mean);
            se = std::sqrt(pairwise_sum(dev) / (n - 1)) / std::sqrt(double(n));
        }
        table.rows.push_back({label, snr, model.P, mean, se,
                              static_cast<long long>(n), cfg.seed});
        if (diag) {
            long long rej = 0;
            for (const long long r : rejected) rej += r;
            diag->points.push_back({snr, model.P, pairwise_sum(r1) / n,
                                    pairwise_sum(r2) / n, rej});
        }
    }
    return table;
}

std::string ResultTable::to_csv() const {
    std::string out(kCsvHeader);
    out.push_back('\n');
    for (const auto& r : rows) {
        out += r.scheme;
        out.push_back(',');
        out += format_double(r.snr_db);
        out.push_back(',');
        out += format_double(r.p_linear);
        out.push_back(',');
        out += format_double(r.mean_sum_rate);
        out.push_back(',');
        out += format_double(r.stderr_);
        out.push_back(',');
        out += std::to_string(r.trials);
        out.push_back(',');
        out += std::to_string(r.seed);
        out.push_back('\n');
    }
    return out;
}

ResultTable ResultTable::from_csv(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (const char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    if (lines.empty() || lines[0] != kCsvHeader)
        throw std::invalid_argument("unexpected CSV header");

    ResultTable table;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> fields;
        std::string f;
        for (const char c : lines[i]) {
            if (c == ',') {
                fields.push_back(f);
                f.clear();
            } else {
                f.push_back(c);
            }
        }
        fields.push_back(f);
        if (fields.size() != 7)
            throw std::invalid_argument("bad CSV row: " + lines[i]);
        ResultRow row;
        row.scheme = fields[0];
        row.snr_db = parse_double_field(fields[1], "snr_db");
        row.p_linear = parse_double_field(fields[2], "p_linear");
        row.mean_sum_rate = parse_double_field(fields[3], "mean_sum_rate");
        row.stderr_ = parse_double_field(fields[4], "stderr");
        row.trials = static_cast<long long>(parse_double_field(fields[5], "trials"));
        row.seed = static_cast<std::uint64_t>(
            std::strtoull(fields[6].c_str(), nullptr, 10));
        table.rows.push_back(std::move(row));
    }
    return table;
}

RateCurve ResultTable::curve_for(const std::string& label) const {
    RateCurve curve;
    for (const auto& r : rows)
        if (r.scheme == label)
            curve.points.push_back({r.p_linear, r.mean_sum_rate, r.stderr_});
    std::sort(curve.points.begin(), curve.points.end(),
              [](const auto& a, const auto& b) { return a.p_linear < b.p_linear; });
    return curve;
}

std::vector<std::string> ResultTable::scheme_labels() const {
    std::vector<std::string> labels;
    for (const auto& r : rows)
        if (std::find(labels.begin(), labels.end(), r.scheme) == labels.end())
            labels.push_back(r.scheme);
    return labels;
}

Fig2Output reproduce_fig2(int trials, std::uint64_t seed, int threads) {
    Fig2Output out;
    for (const Scheme s : {Scheme::Zf, Scheme::Mat, Scheme::AmatZf,
                           Scheme::AmatApzf, Scheme::ZfPerfect}) {
        SimConfig cfg;
        cfg.scheme = s;
        cfg.alpha1 = 1.0;
        cfg.alpha2 = 0.5;
        cfg.snr_db_start = 0.0;
        cfg.snr_db_stop = 60.0;
        cfg.snr_db_step = 5.0;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        const ResultTable t = run_experiment(cfg);
        out.table.rows.insert(out.table.rows.end(), t.rows.begin(),
                              t.rows.end());
    }
    out.csv = out.table.to_csv();
    out.gnuplot =
        "# Average sum rate vs SNR for the five transmission schemes.\n"
        "set datafile separator \",\"\n"
        "set xlabel \"SNR [dB]\"\n"
        "set ylabel \"average sum rate [bits/s/Hz]\"\n"
        "set key top left\n"
        "plot for [s in \"zf mat amat_zf amat_apzf zf_perfect\"] \\\n"
        "    \"fig2.csv\" every ::1 using 2:(strcol(1) eq s ? $4 : NaN) \\\n"
        "    with linespoints title s\n";
    return out;
}

// --- CLI ---------------------------------------------------------------------

namespace {

void apply_config_json(SimConfig& cfg, const nlohmann::json& j) {
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "scheme")
                cfg.scheme = scheme_from_label(val.get<std::string>());
            else if (key == "alpha1")
                cfg.alpha1 = val.get<double>();
            else if (key == "alpha2")
                cfg.alpha2 = val.get<double>();
            else if (key == "snr_db_start")
                cfg.snr_db_start = val.get<double>();
            else if (key == "snr_db_stop")
                cfg.snr_db_stop = val.get<double>();
            else if (key == "snr_db_step")
                cfg.snr_db_step = val.get<double>();
            else if (key == "trials")
                cfg.trials = val.get<int>();
            else if (key == "seed")
                cfg.seed = val.get<std::uint64_t>();
            else if (key == "mode") {
                const std::string m = val.get<std::string>();
                if (m == "exponent")
                    cfg.mode = SimConfig::Mode::Exponent;
                else if (m == "physical")
                    cfg.mode = SimConfig::Mode::Physical;
                else
                    throw ConfigError("mode", "must be exponent or physical");
            } else if (key == "tau_fb")
                cfg.tau_fb = val.get<double>();
            else if (key == "tau_bh")
                cfg.tau_bh = val.get<double>();
            else if (key == "f_d")
                cfg.f_d = val.get<double>();
            else if (key == "favored_rx")
                cfg.favored_rx = val.get<int>();
            else if (key == "out_path")
                cfg.out_path = val.get<std::string>();
            else
                throw ConfigError(key, "unknown config field");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(key, e.what());
        }
    }
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config", std::string("JSON parse error: ") + e.what());
    }
    SimConfig cfg;
    apply_config_json(cfg, j);
    return cfg;
}

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
    const char* env = std::getenv("NETMIMO_SEED");
    if (!env || !*env) return fallback;
    std::uint64_t v{};
    const auto res = std::from_chars(env, env + std::strlen(env), v);
    if (res.ec != std::errc() || *res.ptr != '\0')
        throw ConfigError("seed", "NETMIMO_SEED must be an unsigned integer");
    return v;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Two-cell network MIMO downlink simulator"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand(
        "simulate", "Monte-Carlo sum-rate curve for one scheme");
    std::string sim_config, sim_scheme = "zf", sim_mode = "exponent", sim_out;
    SimConfig defaults;
    double sim_a1 = defaults.alpha1, sim_a2 = defaults.alpha2;
    double sim_start = defaults.snr_db_start, sim_stop = defaults.snr_db_stop,
           sim_step = defaults.snr_db_step;
    double sim_tau_fb = 0.0, sim_tau_bh = 0.0, sim_fd = 0.0;
    int sim_trials = defaults.trials, sim_favored = 1, sim_threads = 1;
    std::uint64_t sim_seed = kDefaultSeed;
    sim->add_option("--config", sim_config, "JSON config file; flags override");
    sim->add_option("--scheme", sim_scheme,
                    "zf | zf_perfect | mat | amat_zf | amat_apzf | vertex");
    sim->add_option("--alpha1", sim_a1, "own-cell CSIT quality exponent");
    sim->add_option("--alpha2", sim_a2, "cross-cell CSIT quality exponent");
    sim->add_option("--snr-start", sim_start, "first SNR point [dB]");
    sim->add_option("--snr-stop", sim_stop, "last SNR point [dB]");
    sim->add_option("--snr-step", sim_step, "SNR step [dB]");
    sim->add_option("--trials", sim_trials, "realizations per SNR point");
    sim->add_option("--seed", sim_seed, "base RNG seed");
    sim->add_option("--mode", sim_mode, "exponent | physical");
    sim->add_option("--tau-fb", sim_tau_fb, "feedback delay (physical mode)");
    sim->add_option("--tau-bh", sim_tau_bh, "backhaul delay (physical mode)");
    sim->add_option("--fd", sim_fd, "Doppler spread (physical mode)");
    sim->add_option("--favored-rx", sim_favored, "vertex scheme favored RX");
    sim->add_option("--threads", sim_threads, "worker threads");
    sim->add_option("--out", sim_out, "output CSV path (default stdout)");

    // region
    auto* region = app.add_subcommand(
        "region", "DoF region halfspaces and vertices as JSON");
    double reg_a1 = 1.0, reg_a2 = 0.5;
    std::string reg_out;
    region->add_option("--alpha1", reg_a1, "own-cell CSIT quality exponent");
    region->add_option("--alpha2", reg_a2, "cross-cell CSIT quality exponent");
    region->add_option("--out", reg_out, "output path (default stdout)");

    // slopes
    auto* slopes = app.add_subcommand(
        "slopes", "fit DoF slopes per scheme from a result CSV");
    std::string slopes_in;
    int slopes_window = 4;
    slopes->add_option("--in", slopes_in, "input CSV")->required();
    slopes->add_option("--window", slopes_window,
                       "number of highest-SNR points in the fit");

    // converse
    auto* conv = app.add_subcommand(
        "converse", "probe the weighted-difference outer bound");
    double conv_a1 = 1.0, conv_a2 = 0.5;
    std::vector<double> conv_p = {100.0, 1000.0, 10000.0, 100000.0};
    int conv_draws = 50, conv_grid = 8, conv_mc = 1000, conv_threads = 1;
    std::uint64_t conv_seed = kDefaultSeed;
    conv->add_option("--alpha1", conv_a1, "own-cell CSIT quality exponent");
    conv->add_option("--alpha2", conv_a2, "cross-cell CSIT quality exponent");
    conv->add_option("--p-levels", conv_p, "linear power levels");
    conv->add_option("--draws", conv_draws, "estimate draws to average");
    conv->add_option("--grid", conv_grid, "grid resolution per axis (>= 8)");
    conv->add_option("--mc", conv_mc, "Monte-Carlo samples per draw (>= 1000)");
    conv->add_option("--seed", conv_seed, "base RNG seed");
    conv->add_option("--threads", conv_threads, "worker threads");

    // reproduce-fig2
    auto* fig2 = app.add_subcommand(
        "reproduce-fig2", "emit the five reference sum-rate curves");
    std::string fig2_dir = ".";
    int fig2_trials = 1000, fig2_threads = 1;
    std::uint64_t fig2_seed = kDefaultSeed;
    fig2->add_option("--out-dir", fig2_dir, "output directory");
    fig2->add_option("--trials", fig2_trials, "realizations per SNR point");
    fig2->add_option("--seed", fig2_seed, "base RNG seed");
    fig2->add_option("--threads", fig2_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            SimConfig cfg;
            if (sim->count("--config")) cfg = load_config_file(sim_config);
            cfg.seed = seed_from_env_or(cfg.seed);
            if (sim->count("--scheme")) cfg.scheme = scheme_from_label(sim_scheme);
            if (sim->count("--alpha1")) cfg.alpha1 = sim_a1;
            if (sim->count("--alpha2")) cfg.alpha2 = sim_a2;
            if (sim->count("--snr-start")) cfg.snr_db_start = sim_start;
            if (sim->count("--snr-stop")) cfg.snr_db_stop = sim_stop;
            if (sim->count("--snr-step")) cfg.snr_db_step = sim_step;
            if (sim->count("--trials")) cfg.trials = sim_trials;
            if (sim->count("--seed")) cfg.seed = sim_seed;
            if (sim->count("--mode")) {
                if (sim_mode == "exponent")
                    cfg.mode = SimConfig::Mode::Exponent;
                else if (sim_mode == "physical")
                    cfg.mode = SimConfig::Mode::Physical;
                else
                    throw ConfigError("mode", "must be exponent or physical");
            }
            if (sim->count("--tau-fb")) cfg.tau_fb = sim_tau_fb;
            if (sim->count("--tau-bh")) cfg.tau_bh = sim_tau_bh;
            if (sim->count("--fd")) cfg.f_d = sim_fd;
            if (sim->count("--favored-rx")) cfg.favored_rx = sim_favored;
            if (sim->count("--threads")) cfg.threads = sim_threads;
            if (sim->count("--out")) cfg.out_path = sim_out;

            ExperimentDiag diag;
            const ResultTable table = run_experiment(cfg, &diag);
            emit_or_print(cfg.out_path, table.to_csv());
            long long rejected = 0;
            for (const auto& p : diag.points) rejected += p.rejected_draws;
            if (rejected > 0)
                std::cerr << "rejected near-singular draws: " << rejected << " ("
                          << format_double(static_cast<double>(rejected) /
                                           (cfg.trials *
                                            static_cast<long long>(
                                                diag.points.size())))
                          << " per trial)\n";
        } else if (region->parsed()) {
            const DofRegion r = dof_region(QualityPair(reg_a1, reg_a2));
            nlohmann::json j;
            j["halfspaces"] = nlohmann::json::array();
            for (const auto& h : r.halfspaces)
                j["halfspaces"].push_back({h.a1, h.a2, h.b});
            j["vertices"] = nlohmann::json::array();
            for (const auto& v : r.vertices) j["vertices"].push_back({v.d1, v.d2});
            emit_or_print(reg_out, j.dump() + "\n");
        } else if (slopes->parsed()) {
            std::ifstream in(slopes_in);
            if (!in) throw ConfigError("in", "cannot open " + slopes_in);
            std::stringstream ss;
            ss << in.rdbuf();
            const ResultTable table = ResultTable::from_csv(ss.str());
            std::string out = "scheme,dof_slope\n";
            for (const auto& label : table.scheme_labels()) {
                const double slope =
                    estimate_dof_slope(table.curve_for(label), slopes_window);
                out += label + "," + format_double(slope) + "\n";
            }
            std::cout << out;
        } else if (conv->parsed()) {
            conv_seed = seed_from_env_or(conv_seed);
            const QualityPair qual(conv_a1, conv_a2);
            const ConverseGridSpec grid{conv_grid, conv_grid, conv_grid,
                                        conv_grid};
            std::sort(conv_p.begin(), conv_p.end());
            RateCurve diff_curve;
            std::cout << "p_linear,mean_diff_bits\n";
            for (const double p : conv_p) {
                std::vector<double> per_draw(conv_draws, 0.0);
                auto worker = [&](int begin, int end) {
                    for (int d = begin; d < end; ++d) {
                        RngStream rng(conv_seed, static_cast<std::uint64_t>(d));
                        per_draw[d] =
                            probe_weighted_diff(qual, p, grid, conv_mc, rng)
                                .diff_value_bits;
                    }
                };
                const int workers = std::max(1, std::min(conv_threads, conv_draws));
                if (workers <= 1) {
                    worker(0, conv_draws);
                } else {
                    std::vector<std::thread> pool;
                    const int chunk = (conv_draws + workers - 1) / workers;
                    for (int w = 0; w < workers; ++w) {
                        const int b = w * chunk;
                        const int e = std::min(conv_draws, b + chunk);
                        if (b < e) pool.emplace_back(worker, b, e);
                    }
                    for (auto& th : pool) th.join();
                }
                const double mean = pairwise_sum(per_draw) / conv_draws;
                diff_curve.points.push_back({p, mean, 0.0});
                std::cout << format_double(p) << "," << format_double(mean)
                          << "\n";
            }
            const double slope = estimate_dof_slope(
                diff_curve, static_cast<int>(diff_curve.points.size()));
            const double bound = std::max(conv_a1, conv_a2);
            std::cout << "slope_bits_per_log2P," << format_double(slope) << "\n"
                      << "bound_max_alpha," << format_double(bound) << "\n"
                      << "within_bound," << (slope <= bound + 0.15 ? 1 : 0)
                      << "\n";
        } else if (fig2->parsed()) {
            fig2_seed = seed_from_env_or(fig2_seed);
            const Fig2Output out =
                reproduce_fig2(fig2_trials, fig2_seed, fig2_threads);
            const std::string csv_path = fig2_dir + "/fig2.csv";
            const std::string plot_path = fig2_dir + "/fig2.gnuplot";
            write_text_file(csv_path, out.csv);
            write_text_file(plot_path, out.gnuplot);
            std::cout << "wrote " << csv_path << "\n"
                      << "wrote " << plot_path << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace netmimo
