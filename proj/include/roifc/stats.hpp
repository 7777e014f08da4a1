#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>

#include "roifc/core.hpp"
#include "roifc/similarity.hpp"

namespace roifc {

/// Auxiliary two-sample Welch test on per-vehicle mean similarities, using
/// vehicle-level sample variances and per-group vehicle counts. Reported
/// alongside the primary statistic for comparison; `valid` is false when a
/// group has fewer than two vehicles or both variances vanish.
struct VehicleLevelTTest {
    bool valid = false;
    double t = 0.0;
    double df = 0.0;
    double p_one_sided = 1.0;
};

/// Outcome of the one-sided test of H1: mu_inside > mu_cross.
struct TTestResult {
    double t = 0.0;            ///< +/-infinity when both sigmas are zero but means differ
    double df = 0.0;           ///< Welch-Satterthwaite; +infinity in the zero-sigma case
    double p_one_sided = 1.0;
    bool significant = false;  ///< p_one_sided < alpha
    double alpha = 0.05;
    VehicleLevelTTest vehicle_level;
};

/// t = (mu_inside - mu_cross) / sqrt(sigma_inside^2/N + sigma_cross^2/N),
/// with the same N (number of unique vehicles) in both terms. When both
/// sigmas are zero: returns +/-infinity if the means differ, and throws
/// DegenerateVariance if they are equal (the statistic is undefined).
double t_statistic(const SimilaritySummary& summary, std::size_t n_vehicles);

/// One-sided survival function P(T > t) of Student's t distribution,
/// evaluated through the regularized incomplete beta function with a
/// continued-fraction expansion (absolute accuracy ~1e-12).
double student_t_sf(double t, double df);

/// Regularized incomplete beta function I_x(a, b). Exposed for tests.
double regularized_incomplete_beta(double a, double b, double x);

/// Runs the one-sided test of H1: mu_inside > mu_cross at config.alpha.
/// `n_vehicles` is the dataset's unique-vehicle count N, used as the
/// per-group count in both the statistic and the degrees of freedom.
TTestResult hypothesis_test(const SimilaritySummary& summary, std::size_t n_vehicles,
                            const AnalysisConfig& config);

/// Per-vehicle binned entropy of pooled feature values.
struct EntropySummary {
    std::map<std::string, double> per_vehicle_entropy;
    /// Per-vehicle [min, max] value range the equal-width bins spanned.
    std::map<std::string, std::array<double, 2>> bin_edges;
    double mean_entropy = 0.0;  ///< unweighted mean over vehicles
    std::size_t bins = 0;
    double log_base = 2.0;
};

/// For each vehicle possessing records of the selected ROI class: pools all
/// feature values of that class (across records and dimensions), discretizes
/// them into config.entropy_bins equal-width bins over the vehicle's observed
/// [min, max], and computes H = -sum p_i log(p_i) in config.entropy_log_base.
/// Empty bins contribute zero; a vehicle whose values are all equal has
/// entropy zero by definition. Throws EmptySelection when no vehicle has
/// records of the selected class.
EntropySummary entropy_summary(const Dataset& dataset, RoiFlag roi,
                               const AnalysisConfig& config);

}  // namespace roifc
