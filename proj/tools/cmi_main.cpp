#include "cmi/ci_test.hpp"
#include "cmi/exec.hpp"
#include "cmi/experiments.hpp"
#include "cmi/info.hpp"
#include "cmi/models.hpp"
#include "cmi/resample.hpp"
#include "cmi/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct ExperimentOpts {
    std::vector<std::string> models{"y_to_xz", "xz_to_y", "xy_to_z", "xor"};
    int s = 4;
    double gamma = 0.5;
    double sigma_y = 0.5;
    double sigma_xz = 0.07;
    double alpha_z = 3.0;
    double beta = 0.8;
    std::vector<double> lambdas{0.25, 0.5, 0.75, 1.0};
    std::vector<double> fracs{0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0};
    std::vector<std::string> schemes{"cp", "cr"};
    std::vector<std::string> tests{"exact", "df", "asymptotic"};
    int b_count = 50;
    double alpha = 0.05;
    int repetitions = 500;
    int null_samples = 10000;
    uint64_t seed = 1;
    bool strict = false;
    bool serial = false;
    int threads = 0;
    std::string output;
};

void add_experiment_options(CLI::App* cmd, ExperimentOpts& opts) {
    cmd->add_option("--models", opts.models,
                    "Models to run (y_to_xz, xz_to_y, xy_to_z, xor)")
        ->delimiter(',');
    cmd->add_option("--s", opts.s, "Conditioning bits per model (2^(s+2) cells)");
    cmd->add_option("--gamma", opts.gamma, "y_to_xz: attenuation of the Z_i signal");
    cmd->add_option("--sigma-y", opts.sigma_y, "y_to_xz: noise scale");
    cmd->add_option("--sigma-xz", opts.sigma_xz, "xz_to_y: noise scale");
    cmd->add_option("--alpha-z", opts.alpha_z, "xy_to_z: signal strength");
    cmd->add_option("--beta", opts.beta, "xor: parity-match probability");
    cmd->add_option("--lambdas", opts.lambdas,
                    "Mixture weights towards the conditionally independent projection")
        ->delimiter(',');
    cmd->add_option("--fracs", opts.fracs, "Sample sizes as multiples of the cell count")
        ->delimiter(',');
    cmd->add_option("--schemes", opts.schemes, "Resampling schemes (cp, cr)")
        ->delimiter(',');
    cmd->add_option("--tests", opts.tests, "Tests to run (exact, df, asymptotic)")
        ->delimiter(',');
    cmd->add_option("--b-count,-B", opts.b_count, "Resamples per test");
    cmd->add_option("--alpha", opts.alpha, "Significance level");
    cmd->add_option("--repetitions,-r", opts.repetitions, "Monte Carlo repetitions");
    cmd->add_option("--null-samples", opts.null_samples,
                    "Extra null draws for the reference mean (df-mean)");
    cmd->add_option("--seed", opts.seed, "Master seed");
    cmd->add_flag("--strict", opts.strict,
                  "Exit 3 if a guaranteed-level test exceeds its significance band");
    cmd->add_flag("--serial", opts.serial, "Single-threaded execution");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = runtime default)");
    cmd->add_option("--output,-o", opts.output, "Output CSV path (default stdout)");
}

cmi::ModelSpec spec_from_opts(const ExperimentOpts& opts, cmi::ModelKind kind) {
    cmi::ModelSpec spec = cmi::default_spec(kind, opts.s);
    spec.gamma = opts.gamma;
    spec.alpha = opts.alpha_z;
    spec.beta = opts.beta;
    spec.sigma = kind == cmi::ModelKind::xz_to_y ? opts.sigma_xz : opts.sigma_y;
    return spec;
}

cmi::ExperimentConfig config_from_opts(const ExperimentOpts& opts) {
    cmi::ExperimentConfig config;
    config.models.clear();
    for (const std::string& name : opts.models) {
        const auto kind = cmi::model_from_name(name);
        if (!kind) throw CLI::ValidationError("--models", "unknown model '" + name + "'");
        config.models.push_back(spec_from_opts(opts, *kind));
    }
    config.lambdas = opts.lambdas;
    config.fracs = opts.fracs;
    config.schemes.clear();
    for (const std::string& name : opts.schemes) {
        if (name == "cp")
            config.schemes.push_back(cmi::Scheme::cp);
        else if (name == "cr")
            config.schemes.push_back(cmi::Scheme::cr);
        else
            throw CLI::ValidationError("--schemes", "unknown scheme '" + name + "'");
    }
    config.tests.clear();
    for (const std::string& name : opts.tests) {
        if (name == "exact")
            config.tests.push_back(cmi::TestKind::exact);
        else if (name == "df")
            config.tests.push_back(cmi::TestKind::df_estimation);
        else if (name == "asymptotic")
            config.tests.push_back(cmi::TestKind::asymptotic);
        else
            throw CLI::ValidationError("--tests", "unknown test '" + name + "'");
    }
    config.b_count = opts.b_count;
    config.alpha = opts.alpha;
    config.repetitions = opts.repetitions;
    config.null_samples = opts.null_samples;
    config.master_seed = opts.seed;
    config.strict = opts.strict;
    config.exec = opts.serial ? cmi::ExecMode::serial : cmi::ExecMode::parallel;
    cmi::set_thread_count(opts.threads);
    return config;
}

// Writes through to the chosen sink; keeps the stream alive for main's scope.
struct OutputSink {
    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = &std::cout;
};

OutputSink open_output(const std::string& path) {
    OutputSink sink;
    if (!path.empty()) {
        sink.file = std::make_unique<std::ofstream>(path);
        if (!*sink.file)
            throw CLI::ValidationError("--output", "cannot open '" + path + "'");
        sink.stream = sink.file.get();
    }
    return sink;
}

struct TestOpts {
    std::string data_path;
    std::vector<int> space;
    std::string test = "exact";
    std::string scheme = "cp";
    std::string conditional_path;
    int b_count = 50;
    double alpha = 0.05;
    uint64_t seed = 1;
};

cmi::CondTable conditional_from_csv(const std::string& path, const cmi::LabelSpace& space) {
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--conditional", "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("conditional csv: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,z,q")
        throw std::invalid_argument("conditional csv: header must be 'x,z,q'");
    std::vector<double> q(static_cast<std::size_t>(space.nx) * space.nz, -1.0);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string fx, fz, fq;
        if (!std::getline(row, fx, ',') || !std::getline(row, fz, ',') ||
            !std::getline(row, fq, ','))
            throw std::invalid_argument("conditional csv line " + std::to_string(line_no) +
                                        ": expected x,z,q");
        const int x = std::stoi(fx);
        const int z = std::stoi(fz);
        if (x < 0 || x >= space.nx || z < 0 || z >= space.nz)
            throw std::invalid_argument("conditional csv line " + std::to_string(line_no) +
                                        ": (x,z) outside the label space");
        q[x + space.nx * z] = std::stod(fq);
    }
    for (double v : q)
        if (v < 0.0)
            throw std::invalid_argument("conditional csv: missing (x,z) entries");
    return cmi::make_cond_table(space.nx, space.nz, std::move(q));
}

int run_single_test(const TestOpts& opts) {
    std::ifstream in(opts.data_path);
    if (!in)
        throw CLI::ValidationError("--data", "cannot open '" + opts.data_path + "'");
    cmi::LabelSpace declared;
    const cmi::LabelSpace* declared_ptr = nullptr;
    if (!opts.space.empty()) {
        if (opts.space.size() != 3)
            throw CLI::ValidationError("--space", "expected nx,ny,nz");
        declared = cmi::LabelSpace(opts.space[0], opts.space[1], opts.space[2]);
        declared_ptr = &declared;
    }
    const cmi::Dataset data = cmi::dataset_from_csv(in, declared_ptr);

    cmi::TestOutcome outcome;
    if (opts.test == "asymptotic") {
        outcome = cmi::asymptotic_test(data, opts.alpha);
    } else {
        cmi::ResamplePlan plan;
        plan.b_count = opts.b_count;
        if (opts.scheme == "cp") {
            plan.scheme = cmi::Scheme::cp;
        } else if (opts.scheme == "cr") {
            plan.scheme = cmi::Scheme::cr;
            if (opts.conditional_path.empty())
                throw CLI::ValidationError("--conditional",
                                           "the cr scheme needs a conditional table");
            plan.conditional = conditional_from_csv(opts.conditional_path, data.space);
        } else {
            throw CLI::ValidationError("--scheme", "unknown scheme '" + opts.scheme + "'");
        }
        if (opts.test == "exact")
            outcome = cmi::exact_test(data, plan, opts.alpha, opts.seed);
        else if (opts.test == "df")
            outcome = cmi::df_estimation_test(data, plan, opts.alpha, opts.seed);
        else
            throw CLI::ValidationError("--test", "unknown test '" + opts.test + "'");
    }

    const auto counts = cmi::count(data);
    std::cout << "n=" << data.n() << " space=" << data.space.nx << "x" << data.space.ny
              << "x" << data.space.nz << "\n";
    std::cout << "cmi_hat=" << cmi::format_g6(cmi::cmi_hat(counts)) << "\n";
    std::cout << "test=" << cmi::test_name(outcome.kind);
    if (outcome.reference == cmi::Reference::resampled)
        std::cout << " scheme=" << opts.scheme << " b_count=" << outcome.b_count;
    else if (outcome.kind == cmi::TestKind::df_estimation)
        std::cout << " scheme=" << opts.scheme << " b_count=" << outcome.b_count
                  << " df=" << cmi::format_g6(outcome.df);
    else
        std::cout << " df=" << cmi::format_g6(outcome.df);
    std::cout << "\n";
    std::cout << "statistic=" << cmi::format_g6(outcome.statistic)
              << " p_value=" << cmi::format_g6(outcome.p_value)
              << " reject=" << (outcome.reject ? "yes" : "no") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(cmi::kToolName) +
                 ": conditional-independence tests for discrete data"};
    app.set_version_flag("--version", std::string(cmi::kToolVersion));
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    ExperimentOpts opts;
    CLI::App* level_power =
        app.add_subcommand("level-power", "Rejection rates over the configured grid");
    add_experiment_options(level_power, opts);
    CLI::App* df_mean =
        app.add_subcommand("df-mean", "Null mean of the statistic vs. resampled mean");
    add_experiment_options(df_mean, opts);
    CLI::App* qq = app.add_subcommand("qq", "Null quantiles vs. reference quantiles");
    add_experiment_options(qq, opts);
    CLI::App* scheme_ratio =
        app.add_subcommand("scheme-ratio", "cp/cr power ratio at lambda = 0.5");
    add_experiment_options(scheme_ratio, opts);
    CLI::App* table1 =
        app.add_subcommand("table1", "Smallest expected cell counts per model");
    add_experiment_options(table1, opts);

    TestOpts test_opts;
    CLI::App* single = app.add_subcommand("test", "Test one dataset from a CSV file");
    single->add_option("--data", test_opts.data_path, "CSV with header x,y,z")->required();
    single->add_option("--space", test_opts.space, "Label counts nx,ny,nz (default: inferred)")
        ->delimiter(',');
    single->add_option("--test", test_opts.test, "exact, df, or asymptotic");
    single->add_option("--scheme", test_opts.scheme, "cp or cr");
    single->add_option("--conditional", test_opts.conditional_path,
                       "CSV with header x,z,q giving q(x|z) (cr only)");
    single->add_option("--b-count,-B", test_opts.b_count, "Resamples");
    single->add_option("--alpha", test_opts.alpha, "Significance level");
    single->add_option("--seed", test_opts.seed, "Resampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (single->parsed()) return run_single_test(test_opts);

        const cmi::ExperimentConfig config = config_from_opts(opts);
        OutputSink sink = open_output(opts.output);
        if (level_power->parsed()) {
            const auto rows = cmi::run_level_power(config);
            cmi::write_csv(*sink.stream, config, rows);
            if (config.strict) {
                const auto bad = cmi::strict_violations(rows, config.alpha);
                if (!bad.empty()) {
                    for (const auto& row : bad)
                        std::cerr << "level violation: " << row.model << " "
                                  << cmi::scheme_name(row.scheme) << " frac="
                                  << cmi::format_g6(row.frac) << " rate="
                                  << cmi::format_g6(row.rejection_rate) << "\n";
                    return 3;
                }
            }
        } else if (df_mean->parsed()) {
            cmi::write_csv(*sink.stream, config, cmi::run_df_mean(config));
        } else if (qq->parsed()) {
            cmi::write_csv(*sink.stream, config, cmi::run_qq(config));
        } else if (scheme_ratio->parsed()) {
            cmi::write_csv(*sink.stream, config, cmi::run_scheme_ratio(config));
        } else if (table1->parsed()) {
            cmi::write_csv(*sink.stream, config, cmi::run_table1(config));
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
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
