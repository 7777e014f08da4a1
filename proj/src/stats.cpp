#include "roifc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace roifc {

namespace {

constexpr const char* kModule = "stats";
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;
    constexpr int kMaxIter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double numer = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + numer * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        numer = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + numer * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

double welch_satterthwaite_df(double var1_over_n, double var2_over_n, double n) {
    const double total = var1_over_n + var2_over_n;
    const double denom =
        (var1_over_n * var1_over_n + var2_over_n * var2_over_n) / (n - 1.0);
    return total * total / denom;
}

/// Sample mean and (n-1)-divisor variance of a value list.
std::pair<double, double> sample_moments(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
    return {mean, var};
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double df) {
    if (!(df > 0.0)) {
        throw Error(ErrorKind::NonPositiveDf, kModule,
                    "degrees of freedom must be positive, got " + std::to_string(df));
    }
    if (std::isnan(t)) {
        throw Error(ErrorKind::InvalidArgument, kModule, "t statistic is NaN");
    }
    if (std::isinf(t)) return t > 0.0 ? 0.0 : 1.0;
    if (std::isinf(df)) {
        // Normal limit via the complementary error function.
        return 0.5 * std::erfc(t / std::sqrt(2.0));
    }
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
    return t >= 0.0 ? half_tail : 1.0 - half_tail;
}

double t_statistic(const SimilaritySummary& summary, std::size_t n_vehicles) {
    if (n_vehicles < 2) {
        throw Error(ErrorKind::InvalidArgument, kModule,
                    "N >= 2 required, got N = " + std::to_string(n_vehicles));
    }
    const double n = static_cast<double>(n_vehicles);
    const double numerator = summary.mu_inside - summary.mu_cross;
    const double se = std::sqrt(summary.sigma_inside * summary.sigma_inside / n +
                                summary.sigma_cross * summary.sigma_cross / n);
    if (se == 0.0) {
        if (numerator == 0.0) {
            throw Error(ErrorKind::DegenerateVariance, kModule,
                        "both sigmas are zero and the means are equal; "
                        "the statistic is not applicable");
        }
        return numerator > 0.0 ? kInf : -kInf;
    }
    return numerator / se;
}

TTestResult hypothesis_test(const SimilaritySummary& summary, std::size_t n_vehicles,
                            const AnalysisConfig& config) {
    TTestResult result;
    result.alpha = config.alpha;
    result.t = t_statistic(summary, n_vehicles);

    const double n = static_cast<double>(n_vehicles);
    const double v1 = summary.sigma_inside * summary.sigma_inside / n;
    const double v2 = summary.sigma_cross * summary.sigma_cross / n;

    if (std::isinf(result.t)) {
        // Perfect separation with zero dispersion.
        result.df = kInf;
        result.p_one_sided = result.t > 0.0 ? 0.0 : 1.0;
    } else {
        result.df = welch_satterthwaite_df(v1, v2, n);
        result.p_one_sided = student_t_sf(result.t, result.df);
    }
    result.significant = result.p_one_sided < config.alpha;

    // Vehicle-level variant: Welch on the per-vehicle means themselves.
    std::vector<double> inside_means, cross_means;
    for (const auto& veh : summary.per_vehicle) {
        if (veh.mean_inside) inside_means.push_back(*veh.mean_inside);
        if (veh.mean_cross) cross_means.push_back(*veh.mean_cross);
    }
    if (inside_means.size() >= 2 && cross_means.size() >= 2) {
        const auto [m1, s1] = sample_moments(inside_means);
        const auto [m2, s2] = sample_moments(cross_means);
        const double n1 = static_cast<double>(inside_means.size());
        const double n2 = static_cast<double>(cross_means.size());
        const double se = std::sqrt(s1 / n1 + s2 / n2);
        if (se > 0.0) {
            auto& aux = result.vehicle_level;
            aux.valid = true;
            aux.t = (m1 - m2) / se;
            const double u1 = s1 / n1;
            const double u2 = s2 / n2;
            aux.df = (u1 + u2) * (u1 + u2) /
                     (u1 * u1 / (n1 - 1.0) + u2 * u2 / (n2 - 1.0));
            aux.p_one_sided = student_t_sf(aux.t, aux.df);
        }
    }
    return result;
}

EntropySummary entropy_summary(const Dataset& dataset, RoiFlag roi,
                               const AnalysisConfig& config) {
    config.validate();
    EntropySummary out;
    out.bins = config.entropy_bins;
    out.log_base = config.entropy_log_base;

    const double log_base_scale = std::log(config.entropy_log_base);
    const auto& records = dataset.records();

    double entropy_sum = 0.0;
    for (const auto& [vehicle_id, slots] : dataset.vehicle_index()) {
        const auto& indices = roi == RoiFlag::Inside ? slots.inside : slots.outside;
        if (indices.empty()) continue;

        double lo = kInf, hi = -kInf;
        for (std::size_t idx : indices) {
            for (double v : records[idx].feature) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        out.bin_edges[vehicle_id] = {lo, hi};

        double entropy = 0.0;
        if (hi > lo) {
            const std::size_t n_bins = config.entropy_bins;
            std::vector<std::size_t> counts(n_bins, 0);
            std::size_t total = 0;
            const double range = hi - lo;
            for (std::size_t idx : indices) {
                for (double v : records[idx].feature) {
                    auto bin = static_cast<std::size_t>((v - lo) / range *
                                                        static_cast<double>(n_bins));
                    counts[std::min(bin, n_bins - 1)] += 1;
                    ++total;
                }
            }
            for (std::size_t c : counts) {
                if (c == 0) continue;  // 0 log 0 := 0
                const double p = static_cast<double>(c) / static_cast<double>(total);
                entropy -= p * std::log(p) / log_base_scale;
            }
            entropy = std::max(0.0, entropy);
        }
        // Degenerate range (all values equal): entropy stays zero.

        out.per_vehicle_entropy[vehicle_id] = entropy;
        entropy_sum += entropy;
    }

    if (out.per_vehicle_entropy.empty()) {
        throw Error(ErrorKind::EmptySelection, kModule,
                    std::string("no vehicle has records in the '") + to_string(roi) +
                        "' class");
    }
    out.mean_entropy = entropy_sum / static_cast<double>(out.per_vehicle_entropy.size());
    return out;
}

}  // namespace roifc
