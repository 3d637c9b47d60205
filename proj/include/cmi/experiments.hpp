#pragma once

#include "cmi/ci_test.hpp"
#include "cmi/exec.hpp"
#include "cmi/models.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmi {

// One Monte Carlo study: models x lambdas x fracs x schemes x tests.
// n = round(frac * 2^(s+2)); lambda shrinks each model pmf towards its
// conditionally independent projection (lambda = 1 is the null).
struct ExperimentConfig {
    std::vector<ModelSpec> models;
    std::vector<double> lambdas{0.25, 0.5, 0.75, 1.0};
    std::vector<double> fracs{0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0};
    std::vector<Scheme> schemes{Scheme::cp, Scheme::cr};
    std::vector<TestKind> tests{TestKind::exact, TestKind::df_estimation,
                                TestKind::asymptotic};
    int b_count = 50;
    double alpha = 0.05;
    int repetitions = 500;
    int null_samples = 10000; // df-mean: draws for the reference mean
    uint64_t master_seed = 1;
    bool strict = false;      // fail the run if a null exact-test rate misbehaves
    ExecMode exec = ExecMode::parallel;
};

ExperimentConfig default_config();
void validate_config(const ExperimentConfig& config);

long long sample_size(const ModelSpec& spec, double frac); // >= 1

struct LevelPowerRow {
    std::string model;
    Scheme scheme = Scheme::cp;
    TestKind test = TestKind::exact;
    double frac = 0.0;
    long long n = 0;
    double lambda = 0.0;
    double rejection_rate = 0.0;
    double standard_error = 0.0;
    int repetitions = 0;
    uint64_t seed = 0; // root of this row's child streams
};

// Rejection rate of every configured (model, lambda, frac, scheme, test)
// combination; datasets are shared across schemes and tests within a
// repetition, and exact/df tests share the resampled statistics.
std::vector<LevelPowerRow> run_level_power(const ExperimentConfig& config);

// Rows where a test with guaranteed finite-sample validity (exact, lambda=1)
// rejected more than alpha + 3 sqrt(alpha(1-alpha)/repetitions).
std::vector<LevelPowerRow> strict_violations(const std::vector<LevelPowerRow>& rows,
                                             double alpha);

struct DfMeanRow {
    std::string model;
    double frac = 0.0;
    long long n = 0;
    double mean_statistic = 0.0;   // mean of 2n*cmi_hat over null_samples draws
    double mean_resampled = 0.0;   // mean over repetitions of per-sample means
    double se_resampled = 0.0;
    double df_asymptotic = 0.0;    // (nx-1)(ny-1)nz
    int repetitions = 0;
    int null_samples = 0;
    uint64_t seed = 0;
};

// Null mean of the statistic vs. the mean of cp-resampled statistics,
// sampled under each model's conditionally independent projection.
std::vector<DfMeanRow> run_df_mean(const ExperimentConfig& config);

struct QqRow {
    std::string model;
    double frac = 0.0;
    long long n = 0;
    double level = 0.0;
    double q_empirical = 0.0;        // order statistic of the null statistics
    double q_resampled_median = 0.0; // median over samples of per-sample quantile
    double q_chisq_estdf_median = 0.0;
    double q_chisq_asymptotic = 0.0;
};

// Quantile table per (model, frac) under the null, statistic scale 2n*cmi_hat.
// Data columns use order statistics (level 1 -> sample maximum, no
// extrapolation); chi-square columns evaluate at plotting position
// min(level, m/(m+1)) so every emitted value is finite.
std::vector<QqRow> run_qq(const ExperimentConfig& config);

struct SchemeRatioRow {
    std::string model;
    TestKind test = TestKind::exact;
    double frac = 0.0;
    long long n = 0;
    double rate_cp = 0.0;
    double rate_cr = 0.0;
    double ratio = 0.0; // NaN sentinel when rate_cr == 0
};

// cp/cr power ratio at lambda = 0.5 for the exact and df-estimation tests;
// repetitions share datasets across schemes.
std::vector<SchemeRatioRow> run_scheme_ratio(const ExperimentConfig& config);

struct Table1Row {
    std::string model;
    double frac = 0.0;
    long long n = 0;
    double n_min_p_ci = 0.0;
    double n_min_p = 0.0;
};

// n * (smallest cell) of each model pmf and of its projection, for the fixed
// grid n in {32, 64, 192, 320, 1280} (frac reported relative to 2^(s+2)).
std::vector<Table1Row> run_table1(const ExperimentConfig& config);

// CSV emission: '#' header lines carry the tool version, operation name,
// master seed and key parameters; floats use 6 significant digits.
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<LevelPowerRow>& rows);
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<DfMeanRow>& rows);
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<QqRow>& rows);
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<SchemeRatioRow>& rows);
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<Table1Row>& rows);

std::string format_g6(double v); // %.6g, C locale

} // namespace cmi
