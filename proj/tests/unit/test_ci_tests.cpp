#include <doctest.h>

#include "cmi/ci_test.hpp"
#include "cmi/info.hpp"
#include "cmi/rng.hpp"
#include "cmi/special.hpp"

#include "testutil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace cmi;

TEST_SUITE_BEGIN("ci_tests");

namespace {

Dataset random_dataset(const LabelSpace& s, std::size_t n, uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    d.space = s;
    for (std::size_t i = 0; i < n; ++i) {
        d.x.push_back(static_cast<int32_t>(rng.below(static_cast<uint64_t>(s.nx))));
        d.y.push_back(static_cast<int32_t>(rng.below(static_cast<uint64_t>(s.ny))));
        d.z.push_back(static_cast<int32_t>(rng.below(static_cast<uint64_t>(s.nz))));
    }
    return d;
}

} // namespace

TEST_CASE("test kinds have stable names") {
    CHECK(std::string(test_name(TestKind::exact)) == "exact");
    CHECK(std::string(test_name(TestKind::df_estimation)) == "df");
    CHECK(std::string(test_name(TestKind::asymptotic)) == "asymptotic");
}

TEST_CASE("the statistic is twice the sample size times the plug-in estimate") {
    const Dataset data = random_dataset(LabelSpace(2, 3, 2), 150, 7);
    const CellCounts counts = count(data);
    CHECK(cmi_statistic(counts) ==
          doctest::Approx(2.0 * 150 * cmi_hat(counts)).epsilon(1e-14));
}

TEST_CASE("resampled statistics are deterministic, non-negative, and mode-independent") {
    const Dataset data = random_dataset(LabelSpace(2, 2, 3), 200, 13);
    ResamplePlan plan;
    plan.b_count = 40;

    const auto serial = resampled_statistics(data, plan, 555, false);
    const auto parallel = resampled_statistics(data, plan, 555, true);
    REQUIRE(serial.size() == 40);
    CHECK(serial == parallel);
    CHECK(resampled_statistics(data, plan, 555, false) == serial);
    CHECK(resampled_statistics(data, plan, 556, false) != serial);
    for (double t : serial) CHECK(t >= 0.0);

    // Entry b is the statistic of the resample drawn from child seed b.
    const Dataset r0 = cp_resample(data, derive_seed(555, {0}));
    CHECK(serial[0] == doctest::Approx(cmi_statistic(count(r0))).epsilon(1e-14));

    plan.scheme = Scheme::cr;
    plan.conditional = true_conditional(empirical_pmf(count(data)));
    const auto cr_stats = resampled_statistics(data, plan, 555, false);
    CHECK(cr_stats.size() == 40);
    CHECK(cr_stats != serial);
}

TEST_CASE("exact p-values count ties against rejection") {
    const TestOutcome clear = exact_test_from_stats(5.0, {1.0, 2.0, 3.0}, 0.05);
    CHECK(clear.kind == TestKind::exact);
    CHECK(clear.reference == Reference::resampled);
    CHECK(clear.b_count == 3);
    CHECK(clear.p_value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(clear.reject == false);
    CHECK(clear.resampled_stats.empty());

    const TestOutcome tied = exact_test_from_stats(2.0, {1.0, 2.0, 3.0}, 0.75);
    CHECK(tied.p_value == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(tied.reject == true); // reject at p <= alpha

    const TestOutcome bottom = exact_test_from_stats(0.0, {0.0, 0.0, 0.0}, 0.05);
    CHECK(bottom.p_value == doctest::Approx(1.0).epsilon(1e-15));

    const TestOutcome kept = exact_test_from_stats(5.0, {1.0, 2.0, 3.0}, 0.05, true);
    CHECK(kept.resampled_stats == std::vector<double>{1.0, 2.0, 3.0});

    // p * (B + 1) is always an integer in {1, ..., B + 1}.
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> stats(19);
        for (double& t : stats) t = 10.0 * rng.next_unit();
        const double t0 = 10.0 * rng.next_unit();
        const double scaled = exact_test_from_stats(t0, stats, 0.05).p_value * 20.0;
        CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
        CHECK(scaled >= 1.0);
        CHECK(scaled <= 20.0);
    }
}

TEST_CASE("df estimation uses the mean resampled statistic as degrees of freedom") {
    const TestOutcome out = df_test_from_stats(2.0, {2.0, 4.0}, 0.05);
    CHECK(out.kind == TestKind::df_estimation);
    CHECK(out.reference == Reference::chisq);
    CHECK(out.df == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(out.degenerate_df == false);
    CHECK(out.p_value == doctest::Approx(chisq_sf(2.0, 3.0)).epsilon(1e-14));

    // All-zero resamples floor the df estimate instead of dividing by zero.
    const TestOutcome floored = df_test_from_stats(2.0, {0.0, 0.0, 0.0}, 0.05);
    CHECK(floored.degenerate_df == true);
    CHECK(floored.df == doctest::Approx(kDfFloor).epsilon(1e-15));
    CHECK(floored.p_value == doctest::Approx(1.0969202331651409e-07).epsilon(1e-12));
    CHECK(floored.reject == true);

    const TestOutcome kept = df_test_from_stats(2.0, {2.0, 4.0}, 0.05, true);
    CHECK(kept.resampled_stats == std::vector<double>{2.0, 4.0});
}

TEST_CASE("end-to-end tests are reproducible and consistent with the stats helpers") {
    const Dataset data = random_dataset(LabelSpace(2, 2, 2), 160, 29);
    ResamplePlan plan;
    plan.b_count = 60;

    const TestOutcome e1 = exact_test(data, plan, 0.05, 909);
    const TestOutcome e2 = exact_test(data, plan, 0.05, 909);
    CHECK(e1.statistic == e2.statistic);
    CHECK(e1.p_value == e2.p_value);

    const double statistic = cmi_statistic(count(data));
    const auto stats = resampled_statistics(data, plan, 909, false);
    CHECK(e1.statistic == doctest::Approx(statistic).epsilon(1e-15));
    CHECK(e1.p_value ==
          doctest::Approx(exact_test_from_stats(statistic, stats, 0.05).p_value).epsilon(1e-15));

    const TestOutcome d = df_estimation_test(data, plan, 0.05, 909);
    CHECK(d.df == doctest::Approx(df_test_from_stats(statistic, stats, 0.05).df).epsilon(1e-15));
    CHECK(d.p_value ==
          doctest::Approx(df_test_from_stats(statistic, stats, 0.05).p_value).epsilon(1e-15));
}

TEST_CASE("the asymptotic reference takes its df from the declared space") {
    const LabelSpace s(3, 4, 5);
    const Dataset data = random_dataset(s, 5000, 41);
    const TestOutcome out = asymptotic_test(data, 0.05);
    CHECK(out.kind == TestKind::asymptotic);
    CHECK(out.reference == Reference::chisq);
    CHECK(out.df == doctest::Approx((3 - 1) * (4 - 1) * 5).epsilon(1e-15));
    CHECK(out.p_value ==
          doctest::Approx(chisq_sf(out.statistic, 30.0)).epsilon(1e-14));
    CHECK(out.reject == (out.p_value <= 0.05));
}

TEST_SUITE_END();
