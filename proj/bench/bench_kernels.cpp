#include "cmi/ci_test.hpp"
#include "cmi/exec.hpp"
#include "cmi/experiments.hpp"
#include "cmi/info.hpp"
#include "cmi/models.hpp"
#include "cmi/resample.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Times one kernel in both modes and checks that the outputs agree exactly.
template <typename Fn>
void bench(const char* name, Fn&& run) {
    const auto t_serial = clock_type::now();
    const auto serial = run(false);
    const double s = seconds_since(t_serial);

    const auto t_parallel = clock_type::now();
    const auto parallel = run(true);
    const double p = seconds_since(t_parallel);

    const bool identical = serial == parallel;
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  identical %s\n",
                name, s, p, p > 0.0 ? s / p : 0.0, identical ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    int threads = 0;
    if (argc > 1) threads = std::atoi(argv[1]);
    cmi::set_thread_count(threads);
    std::printf("threads available: %d\n", cmi::max_threads());

    const cmi::JointPmf p = cmi::ci_projection(cmi::build_pmf(
        cmi::default_spec(cmi::ModelKind::xor_parity)));
    const cmi::Dataset data = cmi::sample(p, 320, 7);

    bench("resampled_statistics x200", [&](bool parallel) {
        cmi::ResamplePlan plan;
        plan.scheme = cmi::Scheme::cp;
        plan.b_count = 200;
        return cmi::resampled_statistics(data, plan, 11, parallel);
    });

    bench("resample_covariance 20k", [&](bool parallel) {
        cmi::ResamplePlan plan;
        plan.scheme = cmi::Scheme::cp;
        const std::vector<double> center = cmi::ci_projection(
            cmi::empirical_pmf(cmi::count(data))).cells();
        return cmi::resample_covariance(data, plan, center, 20000, 13, parallel).data();
    });

    bench("level_power xor frac=1", [&](bool parallel) {
        cmi::ExperimentConfig config;
        config.models = {cmi::default_spec(cmi::ModelKind::xor_parity)};
        config.lambdas = {1.0};
        config.fracs = {1.0};
        config.repetitions = 200;
        config.exec = parallel ? cmi::ExecMode::parallel : cmi::ExecMode::serial;
        const auto rows = cmi::run_level_power(config);
        std::vector<double> rates;
        for (const auto& row : rows) rates.push_back(row.rejection_rate);
        return rates;
    });

    return 0;
}
