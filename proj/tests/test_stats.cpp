#include <doctest.h>

#include <cmath>
#include <limits>

#include "roifc/stats.hpp"
#include "oracles.hpp"

using namespace roifc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SimilaritySummary summary_with(double mu_in, double sigma_in, double mu_cr,
                               double sigma_cr) {
    SimilaritySummary s;
    s.mu_inside = mu_in;
    s.sigma_inside = sigma_in;
    s.mu_cross = mu_cr;
    s.sigma_cross = sigma_cr;
    return s;
}

FeatureRecord rec(std::string vid, RoiFlag roi, std::vector<double> f) {
    FeatureRecord r;
    r.vehicle_id = std::move(vid);
    r.camera_id = "cam1";
    r.condition = "r";
    r.roi = roi;
    r.feature = std::move(f);
    return r;
}

double sf_df1(double t) { return 0.5 - std::atan(t) / M_PI; }
double sf_df2(double t) { return 0.5 - t / (2.0 * std::sqrt(2.0 + t * t)); }

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("t statistic by hand") {
    // Difference 0.2, both sigmas 0.2, N = 8: se = sqrt(2 * 0.04 / 8) = 0.1.
    const auto s = summary_with(0.8, 0.2, 0.6, 0.2);
    CHECK(t_statistic(s, 8) == doctest::Approx(2.0).epsilon(1e-12));

    // Sign follows the direction of the difference.
    CHECK(t_statistic(summary_with(0.6, 0.2, 0.8, 0.2), 8) ==
          doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("t statistic degenerate cases") {
    CHECK(t_statistic(summary_with(0.9, 0.0, 0.4, 0.0), 5) == kInf);
    CHECK(t_statistic(summary_with(0.4, 0.0, 0.9, 0.0), 5) == -kInf);
    try {
        (void)t_statistic(summary_with(0.5, 0.0, 0.5, 0.0), 5);
        FAIL("expected DegenerateVariance");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateVariance);
        CHECK(std::string(e.what()).find("not applicable") != std::string::npos);
    }
    try {
        (void)t_statistic(summary_with(0.8, 0.1, 0.6, 0.1), 1);
        FAIL("expected InvalidArgument");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("survival function closed forms") {
    for (double df : {1.0, 2.0, 7.0, 100.0}) {
        CHECK(student_t_sf(0.0, df) == doctest::Approx(0.5).epsilon(1e-14));
    }
    // df = 1: sf(t) = 1/2 - atan(t)/pi.
    CHECK(student_t_sf(1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
    for (double t : {-3.0, -1.0, 0.5, 2.0, 10.0}) {
        CHECK(student_t_sf(t, 1.0) == doctest::Approx(sf_df1(t)).epsilon(1e-12));
    }
    // df = 2: sf(t) = 1/2 - t / (2 sqrt(2 + t^2)).
    CHECK(student_t_sf(std::sqrt(2.0), 2.0) ==
          doctest::Approx(0.146447).epsilon(1e-6));
    for (double t : {-2.5, -0.5, 0.25, 1.0, 4.0}) {
        CHECK(student_t_sf(t, 2.0) == doctest::Approx(sf_df2(t)).epsilon(1e-12));
    }
}

TEST_CASE("survival function symmetry and monotonicity") {
    for (double df : {0.5, 1.0, 2.0, 5.0, 30.0, 1000.0}) {
        double prev = 1.1;
        for (double t = -5.0; t <= 5.0; t += 0.25) {
            const double sf = student_t_sf(t, df);
            const double mirrored = 1.0 - student_t_sf(-t, df);
            CHECK(std::fabs(sf - mirrored) < 1e-10);
            CHECK(sf < prev);  // strictly decreasing in t
            CHECK(sf > 0.0);
            CHECK(sf < 1.0);
            prev = sf;
        }
    }
}

TEST_CASE("survival function normal limit") {
    CHECK(std::fabs(student_t_sf(1.6449, 1000.0) - 0.05) < 2e-3);
    // Infinite df takes the erfc path.
    CHECK(std::fabs(student_t_sf(1.6449, kInf) - 0.05) < 1e-5);
    CHECK(student_t_sf(0.0, kInf) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("survival function guards") {
    CHECK_THROWS_AS((void)student_t_sf(1.0, 0.0), Error);
    CHECK_THROWS_AS((void)student_t_sf(1.0, -2.0), Error);
    CHECK_THROWS_AS((void)student_t_sf(std::nan(""), 5.0), Error);
    CHECK(student_t_sf(kInf, 5.0) == 0.0);
    CHECK(student_t_sf(-kInf, 5.0) == 1.0);
}

TEST_CASE("regularized incomplete beta identities") {
    for (double x : {0.05, 0.3, 0.5, 0.7, 0.95}) {
        CHECK(regularized_incomplete_beta(1.0, 1.0, x) ==
              doctest::Approx(x).epsilon(1e-14));
        CHECK(regularized_incomplete_beta(2.0, 1.0, x) ==
              doctest::Approx(x * x).epsilon(1e-13));
        CHECK(regularized_incomplete_beta(1.0, 3.0, x) ==
              doctest::Approx(1.0 - std::pow(1.0 - x, 3.0)).epsilon(1e-13));
        CHECK(regularized_incomplete_beta(2.5, 1.75, x) ==
              doctest::Approx(1.0 - regularized_incomplete_beta(1.75, 2.5, 1.0 - x))
                  .epsilon(1e-12));
    }
    CHECK(regularized_incomplete_beta(3.0, 4.0, 0.0) == 0.0);
    CHECK(regularized_incomplete_beta(3.0, 4.0, 1.0) == 1.0);
}

TEST_CASE("hypothesis test wires statistic, df, and verdict together") {
    const auto s = summary_with(0.8, 0.2, 0.6, 0.2);
    AnalysisConfig config{};
    const TTestResult r = hypothesis_test(s, 8, config);
    CHECK(r.t == doctest::Approx(2.0).epsilon(1e-12));
    // Equal variances make Welch-Satterthwaite collapse to 2(N-1).
    CHECK(r.df == doctest::Approx(14.0).epsilon(1e-12));
    CHECK(r.p_one_sided == doctest::Approx(student_t_sf(r.t, r.df)).epsilon(1e-15));
    CHECK(r.p_one_sided > 0.03);
    CHECK(r.p_one_sided < 0.04);
    CHECK(r.significant);
    CHECK(r.alpha == 0.05);
    CHECK(!r.vehicle_level.valid);  // no per-vehicle means supplied

    // One-sided: a large negative t is never significant.
    const TTestResult neg = hypothesis_test(summary_with(0.6, 0.2, 0.8, 0.2), 8, config);
    CHECK(neg.p_one_sided > 0.95);
    CHECK(!neg.significant);
}

TEST_CASE("perfect separation with zero spread is significant by convention") {
    AnalysisConfig config{};
    const TTestResult r = hypothesis_test(summary_with(0.9, 0.0, 0.4, 0.0), 6, config);
    CHECK(r.t == kInf);
    CHECK(r.df == kInf);
    CHECK(r.p_one_sided == 0.0);
    CHECK(r.significant);
}

TEST_CASE("vehicle-level auxiliary test activates with enough vehicles") {
    SimilaritySummary s = summary_with(0.8, 0.1, 0.5, 0.1);
    for (int v = 0; v < 4; ++v) {
        VehiclePairStats stats;
        stats.vehicle_id = "v" + std::to_string(v);
        stats.n_inside = 2;
        stats.n_cross = 2;
        stats.mean_inside = 0.7 + 0.05 * v;
        stats.mean_cross = 0.4 + 0.05 * v;
        s.per_vehicle.push_back(stats);
    }
    const TTestResult r = hypothesis_test(s, 4, AnalysisConfig{});
    CHECK(r.vehicle_level.valid);
    CHECK(r.vehicle_level.t > 0.0);
    CHECK(r.vehicle_level.df > 0.0);
    CHECK(r.vehicle_level.p_one_sided > 0.0);
    CHECK(r.vehicle_level.p_one_sided < 1.0);
}

TEST_CASE("entropy analytic cases") {
    AnalysisConfig config{};
    config.entropy_bins = 4;

    // Four values landing in four distinct bins: uniform, 2 bits.
    Dataset uniform = build_dataset({rec("a", RoiFlag::Inside, {0.0, 1.0, 2.0, 3.0})});
    const EntropySummary h_uniform = entropy_summary(uniform, RoiFlag::Inside, config);
    CHECK(h_uniform.per_vehicle_entropy.at("a") == 2.0);
    CHECK(h_uniform.mean_entropy == 2.0);
    const auto edges = h_uniform.bin_edges.at("a");
    CHECK(edges[0] == 0.0);
    CHECK(edges[1] == 3.0);

    // All values equal: zero entropy by definition, not an error.
    Dataset constant = build_dataset({rec("a", RoiFlag::Inside, {5.0, 5.0, 5.0})});
    CHECK(entropy_summary(constant, RoiFlag::Inside, config).mean_entropy == 0.0);

    // Masses (1/2, 1/4, 1/4): H = 1.5 bits.
    Dataset skewed = build_dataset({rec("a", RoiFlag::Inside, {0.0, 0.0, 1.0, 2.0})});
    CHECK(entropy_summary(skewed, RoiFlag::Inside, config).mean_entropy ==
          doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("entropy pools values per vehicle and averages unweighted") {
    AnalysisConfig config{};
    config.entropy_bins = 4;
    // Vehicle a pools across two records and all dimensions: {0,1,2,3} -> 2 bits.
    // Vehicle b is constant -> 0 bits. Mean = 1 bit.
    Dataset d = build_dataset({
        rec("a", RoiFlag::Inside, {0.0, 1.0}),
        rec("a", RoiFlag::Inside, {2.0, 3.0}),
        rec("b", RoiFlag::Inside, {7.0, 7.0}),
        rec("b", RoiFlag::Inside, {7.0, 7.0}),
    });
    const EntropySummary h = entropy_summary(d, RoiFlag::Inside, config);
    CHECK(h.per_vehicle_entropy.at("a") == 2.0);
    CHECK(h.per_vehicle_entropy.at("b") == 0.0);
    CHECK(h.mean_entropy == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("entropy respects the log base") {
    AnalysisConfig base2{};
    base2.entropy_bins = 4;
    AnalysisConfig base4 = base2;
    base4.entropy_log_base = 4.0;
    Dataset d = build_dataset({rec("a", RoiFlag::Inside, {0.0, 1.0, 2.0, 3.0})});
    const double h2 = entropy_summary(d, RoiFlag::Inside, base2).mean_entropy;
    const double h4 = entropy_summary(d, RoiFlag::Inside, base4).mean_entropy;
    CHECK(h4 == doctest::Approx(h2 / 2.0).epsilon(1e-12));
}

TEST_CASE("entropy is invariant under positive affine maps of the values") {
    SplitMix64 rng(44);
    GaussianSampler gauss(rng.next_u64());
    std::vector<double> values(40);
    for (auto& v : values) v = gauss.next();

    std::vector<double> mapped = values;
    for (auto& v : mapped) v = 2.5 * v + 17.0;

    AnalysisConfig config{};
    Dataset a = build_dataset({rec("a", RoiFlag::Inside, values)});
    Dataset b = build_dataset({rec("a", RoiFlag::Inside, mapped)});
    const double ha = entropy_summary(a, RoiFlag::Inside, config).mean_entropy;
    const double hb = entropy_summary(b, RoiFlag::Inside, config).mean_entropy;
    CHECK(ha == doctest::Approx(hb).epsilon(1e-12));
}

TEST_CASE("entropy stays within [0, log(bins)] and matches the direct formula") {
    SplitMix64 rng(45);
    AnalysisConfig config{};
    config.entropy_bins = 16;
    const double h_max = std::log2(16.0);

    for (int trial = 0; trial < 20; ++trial) {
        Dataset d = oracles::random_dataset(rng, 5, 4, 6);
        const EntropySummary h = entropy_summary(d, RoiFlag::Inside, config);
        for (const auto& [vid, value] : h.per_vehicle_entropy) {
            CHECK(value >= 0.0);
            CHECK(value <= h_max + 1e-12);

            std::vector<double> pooled;
            for (std::size_t idx : d.vehicle(vid).inside) {
                for (double x : d.records()[idx].feature) pooled.push_back(x);
            }
            CHECK(value ==
                  doctest::Approx(oracles::naive_entropy(pooled, 16, 2.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("entropy of an absent class throws EmptySelection") {
    Dataset d = build_dataset({rec("a", RoiFlag::Inside, {1.0, 2.0})});
    try {
        (void)entropy_summary(d, RoiFlag::Outside, AnalysisConfig{});
        FAIL("expected EmptySelection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptySelection);
    }
}

}  // TEST_SUITE
