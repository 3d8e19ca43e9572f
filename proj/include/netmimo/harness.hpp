// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration, Monte-Carlo orchestration and CSV emission.
// Determinism contract: a (config, seed) pair produces byte-identical CSV
// across runs and across worker-thread counts. Each trial owns the stream
// derived from (seed, trial index) and aggregation is pairwise summation
// over the trial-ordered value vector.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netmimo/channel_model.hpp"
#include "netmimo/dof_analysis.hpp"
#include "netmimo/schemes.hpp"

namespace netmimo {

inline constexpr std::uint64_t kDefaultSeed = 1729;

inline constexpr const char* kCsvHeader =
    "scheme,snr_db,p_linear,mean_sum_rate_bps_hz,stderr,trials,seed";

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct SimConfig {
    enum class Mode { Exponent, Physical };

    Scheme scheme = Scheme::Zf;
    double alpha1 = 1.0;
    double alpha2 = 0.5;
    double snr_db_start = 0.0;
    double snr_db_stop = 60.0;
    double snr_db_step = 5.0;
    int trials = 1000;
    std::uint64_t seed = kDefaultSeed;
    Mode mode = Mode::Exponent;
    double tau_fb = 0.0;  // physical mode only
    double tau_bh = 0.0;
    double f_d = 0.0;
    int favored_rx = 1;  // vertex scheme only
    int threads = 1;
    std::string out_path;

    void validate() const;  // throws ConfigError naming the offending field
    std::vector<double> snr_grid_db() const;
};

struct ResultRow {
    std::string scheme;
    double snr_db = 0.0;
    double p_linear = 0.0;
    double mean_sum_rate = 0.0;
    double stderr_ = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    std::string to_csv() const;
    static ResultTable from_csv(const std::string& text);

    // Rows of one scheme as a rate curve, ascending in P.
    RateCurve curve_for(const std::string& scheme_label) const;
    std::vector<std::string> scheme_labels() const;  // first-appearance order
};

// Per-SNR-point extras that do not fit the fixed CSV schema.
struct PointDiag {
    double snr_db = 0.0;
    double p_linear = 0.0;
    double mean_rate_rx1 = 0.0;
    double mean_rate_rx2 = 0.0;
    long long rejected_draws = 0;  // near-singular resamples, not failures
};

struct ExperimentDiag {
    std::vector<PointDiag> points;
};

double snr_db_to_p(double snr_db);

ResultTable run_experiment(const SimConfig& cfg, ExperimentDiag* diag = nullptr);

struct Fig2Output {
    ResultTable table;
    std::string csv;
    std::string gnuplot;
};

// The five reference curves (imperfect-CSIT ZF, MAT, alpha-MAT with both
// beamformers, perfect-CSIT ZF) at alpha1 = 1, alpha2 = 0.5 over 0..60 dB in
// 5 dB steps.
Fig2Output reproduce_fig2(int trials = 1000, std::uint64_t seed = kDefaultSeed,
                          int threads = 1);

// Subcommands: simulate, region, slopes, converse, reproduce-fig2.
// Returns 0 on success, 2 on configuration or usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace netmimo
