#include "cmi/experiments.hpp"

#include "cmi/info.hpp"
#include "cmi/rng.hpp"
#include "cmi/special.hpp"
#include "cmi/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace cmi {

namespace {

// Operation tags keep the four runners' seed streams disjoint under one
// master seed.
constexpr uint64_t kOpLevelPower = 1;
constexpr uint64_t kOpDfMean = 2;
constexpr uint64_t kOpQq = 3;
constexpr uint64_t kOpSchemeRatio = 4;

uint64_t scheme_tag(Scheme s) { return s == Scheme::cp ? 1 : 2; }

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double se_of_mean(const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    const double n = static_cast<double>(v.size());
    return v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

// Order statistic at `level` in (0, 1]: the ceil(level*m)-th smallest.
double order_stat(const std::vector<double>& sorted, double level) {
    const auto m = static_cast<long long>(sorted.size());
    long long idx = static_cast<long long>(std::ceil(level * static_cast<double>(m))) - 1;
    idx = std::max(0ll, std::min(m - 1, idx));
    return sorted[static_cast<std::size_t>(idx)];
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return 0.5 * (v[(m - 1) / 2] + v[m / 2]);
}

} // namespace

ExperimentConfig default_config() {
    ExperimentConfig config;
    for (ModelKind kind : all_model_kinds()) config.models.push_back(default_spec(kind));
    return config;
}

long long sample_size(const ModelSpec& spec, double frac) {
    const long long n = std::llround(frac * std::ldexp(1.0, spec.s + 2));
    if (n < 1)
        throw std::invalid_argument("frac yields an empty sample");
    return n;
}

void validate_config(const ExperimentConfig& config) {
    if (config.models.empty())
        throw std::invalid_argument("config needs at least one model");
    for (const ModelSpec& spec : config.models) validate_spec(spec);
    if (config.lambdas.empty())
        throw std::invalid_argument("config needs at least one lambda");
    for (double l : config.lambdas)
        if (!(l >= 0.0) || !(l <= 1.0))
            throw std::invalid_argument("lambda must lie in [0, 1]");
    if (config.fracs.empty())
        throw std::invalid_argument("config needs at least one frac");
    for (double f : config.fracs) {
        if (!(f > 0.0))
            throw std::invalid_argument("frac must be positive");
        for (const ModelSpec& spec : config.models) sample_size(spec, f);
    }
    if (config.schemes.empty())
        throw std::invalid_argument("config needs at least one scheme");
    if (config.tests.empty())
        throw std::invalid_argument("config needs at least one test");
    if (config.b_count < 1)
        throw std::invalid_argument("b_count must be >= 1");
    if (!(config.alpha > 0.0) || !(config.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
    if (config.repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
    if (config.null_samples < 1)
        throw std::invalid_argument("null_samples must be >= 1");
}

std::vector<LevelPowerRow> run_level_power(const ExperimentConfig& config) {
    validate_config(config);
    std::vector<LevelPowerRow> rows;
    const std::size_t reps = static_cast<std::size_t>(config.repetitions);
    const std::size_t combos = config.schemes.size() * config.tests.size();

    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const ModelSpec& spec = config.models[mi];
        const JointPmf p = build_pmf(spec);
        for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
            const double lambda = config.lambdas[li];
            const JointPmf p_mix = mix(p, lambda);
            const CondTable cond = true_conditional(p_mix);
            for (std::size_t fi = 0; fi < config.fracs.size(); ++fi) {
                const double frac = config.fracs[fi];
                const long long n = sample_size(spec, frac);
                const uint64_t root =
                    derive_seed(config.master_seed, {kOpLevelPower, mi, li, fi});

                std::vector<uint8_t> reject(reps * combos, 0);
                for_each_index(reps, config.exec, [&](std::size_t rep) {
                    const Dataset data = sample(p_mix, n, derive_seed(root, {rep, 0}));
                    const double t = cmi_statistic(count(data));
                    const bool asym_reject =
                        asymptotic_test(data, config.alpha).reject;
                    for (std::size_t si = 0; si < config.schemes.size(); ++si) {
                        const Scheme scheme = config.schemes[si];
                        std::vector<double> stats;
                        if (std::any_of(config.tests.begin(), config.tests.end(),
                                        [](TestKind k) { return k != TestKind::asymptotic; })) {
                            ResamplePlan plan;
                            plan.scheme = scheme;
                            plan.b_count = config.b_count;
                            if (scheme == Scheme::cr) plan.conditional = cond;
                            stats = resampled_statistics(
                                data, plan, derive_seed(root, {rep, scheme_tag(scheme)}));
                        }
                        for (std::size_t ti = 0; ti < config.tests.size(); ++ti) {
                            bool rej = false;
                            switch (config.tests[ti]) {
                                case TestKind::exact:
                                    rej = exact_test_from_stats(t, stats, config.alpha).reject;
                                    break;
                                case TestKind::df_estimation:
                                    rej = df_test_from_stats(t, stats, config.alpha).reject;
                                    break;
                                case TestKind::asymptotic:
                                    rej = asym_reject;
                                    break;
                            }
                            reject[rep * combos + si * config.tests.size() + ti] = rej;
                        }
                    }
                });

                for (std::size_t si = 0; si < config.schemes.size(); ++si)
                    for (std::size_t ti = 0; ti < config.tests.size(); ++ti) {
                        long long hits = 0;
                        for (std::size_t rep = 0; rep < reps; ++rep)
                            hits += reject[rep * combos + si * config.tests.size() + ti];
                        LevelPowerRow row;
                        row.model = model_name(spec.kind);
                        row.scheme = config.schemes[si];
                        row.test = config.tests[ti];
                        row.frac = frac;
                        row.n = n;
                        row.lambda = lambda;
                        row.repetitions = config.repetitions;
                        row.rejection_rate =
                            static_cast<double>(hits) / static_cast<double>(reps);
                        row.standard_error = std::sqrt(
                            row.rejection_rate * (1.0 - row.rejection_rate) /
                            static_cast<double>(reps));
                        row.seed = root;
                        rows.push_back(std::move(row));
                    }
            }
        }
    }
    return rows;
}

std::vector<LevelPowerRow> strict_violations(const std::vector<LevelPowerRow>& rows,
                                             double alpha) {
    const double band = 3.0 * std::sqrt(alpha * (1.0 - alpha));
    std::vector<LevelPowerRow> bad;
    for (const LevelPowerRow& row : rows) {
        if (row.test != TestKind::exact || row.lambda != 1.0) continue;
        const double bound = alpha + band / std::sqrt(static_cast<double>(row.repetitions));
        if (row.rejection_rate > bound) bad.push_back(row);
    }
    return bad;
}

std::vector<DfMeanRow> run_df_mean(const ExperimentConfig& config) {
    validate_config(config);
    std::vector<DfMeanRow> rows;
    const std::size_t reps = static_cast<std::size_t>(config.repetitions);
    const std::size_t draws = static_cast<std::size_t>(config.null_samples);

    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const ModelSpec& spec = config.models[mi];
        const JointPmf p_ci = ci_projection(build_pmf(spec));
        for (std::size_t fi = 0; fi < config.fracs.size(); ++fi) {
            const double frac = config.fracs[fi];
            const long long n = sample_size(spec, frac);
            const uint64_t root = derive_seed(config.master_seed, {kOpDfMean, mi, fi});

            std::vector<double> tvals(draws);
            for_each_index(draws, config.exec, [&](std::size_t j) {
                tvals[j] =
                    cmi_statistic(count(sample(p_ci, n, derive_seed(root, {j, 0}))));
            });

            ResamplePlan plan;
            plan.scheme = Scheme::cp;
            plan.b_count = config.b_count;
            std::vector<double> means(reps);
            for_each_index(reps, config.exec, [&](std::size_t j) {
                const Dataset data = sample(p_ci, n, derive_seed(root, {j, 0}));
                means[j] = mean_of(
                    resampled_statistics(data, plan, derive_seed(root, {j, 1})));
            });

            DfMeanRow row;
            row.model = model_name(spec.kind);
            row.frac = frac;
            row.n = n;
            row.mean_statistic = mean_of(tvals);
            row.mean_resampled = mean_of(means);
            row.se_resampled = se_of_mean(means);
            row.df_asymptotic = static_cast<double>(p_ci.space().nx - 1) *
                                (p_ci.space().ny - 1) * p_ci.space().nz;
            row.repetitions = config.repetitions;
            row.null_samples = config.null_samples;
            row.seed = root;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<QqRow> run_qq(const ExperimentConfig& config) {
    validate_config(config);
    const std::vector<double> levels{0.1,  0.2,  0.3,  0.4, 0.5, 0.6,
                                     0.7,  0.8,  0.9,  0.95, 0.99, 1.0};
    std::vector<QqRow> rows;
    const std::size_t m = static_cast<std::size_t>(config.repetitions);
    const double chisq_cap =
        static_cast<double>(m) / (static_cast<double>(m) + 1.0);
    const double estdf_cap = static_cast<double>(config.b_count) /
                             (static_cast<double>(config.b_count) + 1.0);

    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const ModelSpec& spec = config.models[mi];
        const JointPmf p_ci = ci_projection(build_pmf(spec));
        const double df_asym = static_cast<double>(p_ci.space().nx - 1) *
                               (p_ci.space().ny - 1) * p_ci.space().nz;
        for (std::size_t fi = 0; fi < config.fracs.size(); ++fi) {
            const double frac = config.fracs[fi];
            const long long n = sample_size(spec, frac);
            const uint64_t root = derive_seed(config.master_seed, {kOpQq, mi, fi});

            ResamplePlan plan;
            plan.scheme = Scheme::cp;
            plan.b_count = config.b_count;

            std::vector<double> tvals(m);
            std::vector<std::vector<double>> res_q(levels.size(), std::vector<double>(m));
            std::vector<std::vector<double>> estdf_q(levels.size(), std::vector<double>(m));
            for_each_index(m, config.exec, [&](std::size_t j) {
                const Dataset data = sample(p_ci, n, derive_seed(root, {j, 0}));
                tvals[j] = cmi_statistic(count(data));
                std::vector<double> stats =
                    resampled_statistics(data, plan, derive_seed(root, {j, 1}));
                const double df_j = std::max(kDfFloor, mean_of(stats));
                std::sort(stats.begin(), stats.end());
                for (std::size_t li = 0; li < levels.size(); ++li) {
                    res_q[li][j] = order_stat(stats, levels[li]);
                    estdf_q[li][j] =
                        chisq_quantile(std::min(levels[li], estdf_cap), df_j);
                }
            });
            std::sort(tvals.begin(), tvals.end());

            for (std::size_t li = 0; li < levels.size(); ++li) {
                QqRow row;
                row.model = model_name(spec.kind);
                row.frac = frac;
                row.n = n;
                row.level = levels[li];
                row.q_empirical = order_stat(tvals, levels[li]);
                row.q_resampled_median = median_of(res_q[li]);
                row.q_chisq_estdf_median = median_of(estdf_q[li]);
                row.q_chisq_asymptotic =
                    chisq_quantile(std::min(levels[li], chisq_cap), df_asym);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<SchemeRatioRow> run_scheme_ratio(const ExperimentConfig& config) {
    validate_config(config);
    const bool has_cp = std::find(config.schemes.begin(), config.schemes.end(),
                                  Scheme::cp) != config.schemes.end();
    const bool has_cr = std::find(config.schemes.begin(), config.schemes.end(),
                                  Scheme::cr) != config.schemes.end();
    if (!has_cp || !has_cr)
        throw std::invalid_argument("scheme ratio needs both schemes enabled");
    std::vector<TestKind> tests;
    for (TestKind t : config.tests)
        if (t != TestKind::asymptotic) tests.push_back(t);
    if (tests.empty())
        throw std::invalid_argument("scheme ratio needs the exact or df test enabled");

    const double lambda = 0.5;
    std::vector<SchemeRatioRow> rows;
    const std::size_t reps = static_cast<std::size_t>(config.repetitions);

    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const ModelSpec& spec = config.models[mi];
        const JointPmf p_mix = mix(build_pmf(spec), lambda);
        const CondTable cond = true_conditional(p_mix);
        for (std::size_t fi = 0; fi < config.fracs.size(); ++fi) {
            const double frac = config.fracs[fi];
            const long long n = sample_size(spec, frac);
            const uint64_t root =
                derive_seed(config.master_seed, {kOpSchemeRatio, mi, fi});

            // reject layout per rep: [test][scheme], scheme order cp, cr
            std::vector<uint8_t> reject(reps * tests.size() * 2, 0);
            for_each_index(reps, config.exec, [&](std::size_t rep) {
                const Dataset data = sample(p_mix, n, derive_seed(root, {rep, 0}));
                const double t = cmi_statistic(count(data));
                for (int s = 0; s < 2; ++s) {
                    const Scheme scheme = s == 0 ? Scheme::cp : Scheme::cr;
                    ResamplePlan plan;
                    plan.scheme = scheme;
                    plan.b_count = config.b_count;
                    if (scheme == Scheme::cr) plan.conditional = cond;
                    const std::vector<double> stats = resampled_statistics(
                        data, plan, derive_seed(root, {rep, scheme_tag(scheme)}));
                    for (std::size_t ti = 0; ti < tests.size(); ++ti) {
                        const bool rej =
                            tests[ti] == TestKind::exact
                                ? exact_test_from_stats(t, stats, config.alpha).reject
                                : df_test_from_stats(t, stats, config.alpha).reject;
                        reject[(rep * tests.size() + ti) * 2 + s] = rej;
                    }
                }
            });

            for (std::size_t ti = 0; ti < tests.size(); ++ti) {
                long long hits_cp = 0, hits_cr = 0;
                for (std::size_t rep = 0; rep < reps; ++rep) {
                    hits_cp += reject[(rep * tests.size() + ti) * 2 + 0];
                    hits_cr += reject[(rep * tests.size() + ti) * 2 + 1];
                }
                SchemeRatioRow row;
                row.model = model_name(spec.kind);
                row.test = tests[ti];
                row.frac = frac;
                row.n = n;
                row.rate_cp = static_cast<double>(hits_cp) / static_cast<double>(reps);
                row.rate_cr = static_cast<double>(hits_cr) / static_cast<double>(reps);
                row.ratio = row.rate_cr > 0.0
                                ? row.rate_cp / row.rate_cr
                                : std::numeric_limits<double>::quiet_NaN();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<Table1Row> run_table1(const ExperimentConfig& config) {
    if (config.models.empty())
        throw std::invalid_argument("config needs at least one model");
    for (const ModelSpec& spec : config.models) validate_spec(spec);
    const long long ns[] = {32, 64, 192, 320, 1280};
    std::vector<Table1Row> rows;
    for (const ModelSpec& spec : config.models) {
        const double cells = std::ldexp(1.0, spec.s + 2);
        for (long long n : ns) {
            const auto [pci, p] = table1_row(spec, n);
            Table1Row row;
            row.model = model_name(spec.kind);
            row.frac = static_cast<double>(n) / cells;
            row.n = n;
            row.n_min_p_ci = pci;
            row.n_min_p = p;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

std::string describe_model(const ModelSpec& spec) {
    std::string out = model_name(spec.kind);
    out += "(s=" + std::to_string(spec.s);
    switch (spec.kind) {
        case ModelKind::y_to_xz:
            out += ",gamma=" + format_g6(spec.gamma) + ",sigma=" + format_g6(spec.sigma);
            break;
        case ModelKind::xz_to_y:
            out += ",sigma=" + format_g6(spec.sigma);
            break;
        case ModelKind::xy_to_z:
            out += ",alpha=" + format_g6(spec.alpha);
            break;
        case ModelKind::xor_parity:
            out += ",beta=" + format_g6(spec.beta);
            break;
    }
    out += ")";
    return out;
}

void write_header(std::ostream& out, const ExperimentConfig& config, const char* op,
                  const char* columns) {
    out << "# tool=" << kToolName << " " << kToolVersion << "\n";
    out << "# operation=" << op << "\n";
    out << "# master_seed=" << config.master_seed << "\n";
    out << "# seed_scheme=counter_split(master_seed; operation, cell, repetition, draw)\n";
    out << "# models=";
    for (std::size_t i = 0; i < config.models.size(); ++i)
        out << (i ? ";" : "") << describe_model(config.models[i]);
    out << "\n# lambdas=";
    for (std::size_t i = 0; i < config.lambdas.size(); ++i)
        out << (i ? ";" : "") << format_g6(config.lambdas[i]);
    out << "\n# fracs=";
    for (std::size_t i = 0; i < config.fracs.size(); ++i)
        out << (i ? ";" : "") << format_g6(config.fracs[i]);
    out << "\n# schemes=";
    for (std::size_t i = 0; i < config.schemes.size(); ++i)
        out << (i ? ";" : "") << scheme_name(config.schemes[i]);
    out << "\n# tests=";
    for (std::size_t i = 0; i < config.tests.size(); ++i)
        out << (i ? ";" : "") << test_name(config.tests[i]);
    out << "\n# b_count=" << config.b_count << " alpha=" << format_g6(config.alpha)
        << " repetitions=" << config.repetitions
        << " null_samples=" << config.null_samples << "\n";
    out << columns << "\n";
}

} // namespace

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<LevelPowerRow>& rows) {
    write_header(out, config, "level_power",
                 "model,scheme,test,frac,n,lambda,rejection_rate,standard_error,"
                 "repetitions,seed");
    for (const LevelPowerRow& r : rows)
        out << r.model << ',' << scheme_name(r.scheme) << ',' << test_name(r.test) << ','
            << format_g6(r.frac) << ',' << r.n << ',' << format_g6(r.lambda) << ','
            << format_g6(r.rejection_rate) << ',' << format_g6(r.standard_error) << ','
            << r.repetitions << ',' << r.seed << "\n";
}

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<DfMeanRow>& rows) {
    write_header(out, config, "df_mean",
                 "model,frac,n,mean_statistic,mean_resampled,se_resampled,"
                 "df_asymptotic,repetitions,null_samples,seed");
    for (const DfMeanRow& r : rows)
        out << r.model << ',' << format_g6(r.frac) << ',' << r.n << ','
            << format_g6(r.mean_statistic) << ',' << format_g6(r.mean_resampled) << ','
            << format_g6(r.se_resampled) << ',' << format_g6(r.df_asymptotic) << ','
            << r.repetitions << ',' << r.null_samples << ',' << r.seed << "\n";
}

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<QqRow>& rows) {
    write_header(out, config, "qq",
                 "model,frac,n,level,q_empirical,q_resampled_median,"
                 "q_chisq_estdf_median,q_chisq_asymptotic");
    for (const QqRow& r : rows)
        out << r.model << ',' << format_g6(r.frac) << ',' << r.n << ','
            << format_g6(r.level) << ',' << format_g6(r.q_empirical) << ','
            << format_g6(r.q_resampled_median) << ',' << format_g6(r.q_chisq_estdf_median)
            << ',' << format_g6(r.q_chisq_asymptotic) << "\n";
}

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<SchemeRatioRow>& rows) {
    write_header(out, config, "scheme_ratio",
                 "model,test,frac,n,rate_cp,rate_cr,ratio");
    for (const SchemeRatioRow& r : rows)
        out << r.model << ',' << test_name(r.test) << ',' << format_g6(r.frac) << ','
            << r.n << ',' << format_g6(r.rate_cp) << ',' << format_g6(r.rate_cr) << ','
            << format_g6(r.ratio) << "\n";
}

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<Table1Row>& rows) {
    write_header(out, config, "table1", "model,frac,n,n_min_p_ci,n_min_p");
    for (const Table1Row& r : rows)
        out << r.model << ',' << format_g6(r.frac) << ',' << r.n << ','
            << format_g6(r.n_min_p_ci) << ',' << format_g6(r.n_min_p) << "\n";
}

} // namespace cmi
