#pragma once

// Reference implementations used to check the library: direct two-pass
// transcriptions of each formula, kept independent of the library's
// accumulation strategy, plus random-instance generators. Shared by the unit
// and acceptance suites.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "roifc/core.hpp"
#include "roifc/rng.hpp"

namespace oracles {

inline double cosine(const std::vector<double>& u, const std::vector<double>& v) {
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    double s = dot / (std::sqrt(nu) * std::sqrt(nv));
    if (s > 1.0) s = 1.0;
    if (s < -1.0) s = -1.0;
    return s;
}

struct NaiveAggregates {
    double mu_inside = 0.0;
    double sigma_inside = 0.0;
    double mu_cross = 0.0;
    double sigma_cross = 0.0;
    double sigma_inside_centered = 0.0;
    double sigma_cross_centered = 0.0;
    std::size_t n_vehicles_inside = 0;
    std::size_t n_vehicles_cross = 0;
};

/// Materializes every within-camera-irrelevant pair per vehicle, then applies
/// the aggregation definition literally: per-vehicle mean over pairs, global
/// mean over contributing vehicles, and the vehicle-mean of mean squared
/// deviations taken from the global mean (and from the per-vehicle mean for
/// the centered variant).
inline NaiveAggregates naive_summary(const roifc::Dataset& d) {
    std::vector<std::vector<double>> inside_sims, cross_sims;
    for (const auto& [vid, slots] : d.vehicle_index()) {
        (void)vid;
        std::vector<double> ii, io;
        for (std::size_t a = 0; a < slots.inside.size(); ++a) {
            for (std::size_t b = a + 1; b < slots.inside.size(); ++b) {
                ii.push_back(cosine(d.records()[slots.inside[a]].feature,
                                    d.records()[slots.inside[b]].feature));
            }
        }
        for (std::size_t a : slots.inside) {
            for (std::size_t b : slots.outside) {
                io.push_back(cosine(d.records()[a].feature, d.records()[b].feature));
            }
        }
        if (!ii.empty()) inside_sims.push_back(ii);
        if (!io.empty()) cross_sims.push_back(io);
    }

    auto aggregate = [](const std::vector<std::vector<double>>& per_vehicle, double& mu,
                        double& sigma, double& sigma_centered, std::size_t& count) {
        count = per_vehicle.size();
        std::vector<double> means;
        for (const auto& sims : per_vehicle) {
            double m = 0.0;
            for (double s : sims) m += s;
            means.push_back(m / static_cast<double>(sims.size()));
        }
        mu = 0.0;
        for (double m : means) mu += m;
        mu /= static_cast<double>(means.size());

        double dev = 0.0, dev_centered = 0.0;
        for (std::size_t v = 0; v < per_vehicle.size(); ++v) {
            double sq = 0.0, sq_centered = 0.0;
            for (double s : per_vehicle[v]) {
                sq += (s - mu) * (s - mu);
                sq_centered += (s - means[v]) * (s - means[v]);
            }
            dev += sq / static_cast<double>(per_vehicle[v].size());
            dev_centered += sq_centered / static_cast<double>(per_vehicle[v].size());
        }
        sigma = std::sqrt(dev / static_cast<double>(per_vehicle.size()));
        sigma_centered = std::sqrt(dev_centered / static_cast<double>(per_vehicle.size()));
    };

    NaiveAggregates out;
    aggregate(inside_sims, out.mu_inside, out.sigma_inside, out.sigma_inside_centered,
              out.n_vehicles_inside);
    aggregate(cross_sims, out.mu_cross, out.sigma_cross, out.sigma_cross_centered,
              out.n_vehicles_cross);
    return out;
}

/// Random dataset whose first vehicle always has enough records for both
/// aggregates to be defined; the rest have random per-class counts.
inline roifc::Dataset random_dataset(roifc::SplitMix64& rng, std::size_t max_vehicles,
                                     std::size_t max_per_class, std::size_t max_dim) {
    roifc::GaussianSampler gauss(rng.next_u64());
    const std::size_t n_vehicles = 2 + rng.next_u64() % (max_vehicles - 1);
    const std::size_t dim = 1 + rng.next_u64() % max_dim;

    std::vector<roifc::FeatureRecord> records;
    for (std::size_t v = 0; v < n_vehicles; ++v) {
        std::size_t n_in = rng.next_u64() % (max_per_class + 1);
        std::size_t n_out = rng.next_u64() % (max_per_class + 1);
        if (v == 0) {
            n_in = std::max<std::size_t>(n_in, 2);
            n_out = std::max<std::size_t>(n_out, 1);
        }
        for (std::size_t k = 0; k < n_in + n_out; ++k) {
            roifc::FeatureRecord rec;
            rec.vehicle_id = "veh" + std::to_string(v);
            rec.camera_id = rng.next_u64() % 2 == 0 ? "cam1" : "cam2";
            rec.condition = "r";
            rec.frame_index = k;
            rec.roi = k < n_in ? roifc::RoiFlag::Inside : roifc::RoiFlag::Outside;
            rec.feature.resize(dim);
            double norm = 0.0;
            do {
                norm = 0.0;
                for (auto& x : rec.feature) {
                    x = gauss.next();
                    norm += x * x;
                }
            } while (norm == 0.0);
            records.push_back(std::move(rec));
        }
    }
    return roifc::build_dataset(std::move(records));
}

/// Equal-width binned Shannon entropy of a pooled value list.
inline double naive_entropy(std::vector<double> values, std::size_t bins, double base) {
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    if (hi <= lo) return 0.0;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        counts[std::min(b, bins - 1)] += 1;
    }
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(values.size());
        h -= p * std::log(p);
    }
    return h / std::log(base);
}

inline std::array<double, 2> naive_axis_variances(
    const std::vector<std::array<double, 2>>& pts) {
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p[0];
        my += p[1];
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double vx = 0.0, vy = 0.0;
    for (const auto& p : pts) {
        vx += (p[0] - mx) * (p[0] - mx);
        vy += (p[1] - my) * (p[1] - my);
    }
    return {vx / static_cast<double>(pts.size()), vy / static_cast<double>(pts.size())};
}

struct NaiveIntraInter {
    double intra = 0.0;
    double inter = 0.0;
};

inline NaiveIntraInter naive_intra_inter(const std::vector<std::array<double, 2>>& z,
                                         const std::vector<std::string>& labels) {
    std::map<std::string, std::vector<std::array<double, 2>>> classes;
    for (std::size_t i = 0; i < z.size(); ++i) classes[labels[i]].push_back(z[i]);

    NaiveIntraInter out;
    std::vector<std::array<double, 2>> centroids;
    for (const auto& [label, pts] : classes) {
        (void)label;
        double cx = 0.0, cy = 0.0;
        for (const auto& p : pts) {
            cx += p[0];
            cy += p[1];
        }
        centroids.push_back({cx / static_cast<double>(pts.size()),
                             cy / static_cast<double>(pts.size())});
        if (pts.size() >= 2) {
            const auto v = naive_axis_variances(pts);
            out.intra += v[0] + v[1];
        }
    }
    out.intra /= static_cast<double>(classes.size());
    const auto cv = naive_axis_variances(centroids);
    out.inter = cv[0] + cv[1];
    return out;
}

/// Conditional perplexity 2^H of row i given the calibrated bandwidth, built
/// straight from the Gaussian kernel definition.
inline double row_perplexity(const std::vector<std::vector<double>>& x, std::size_t i,
                             double sigma_i) {
    const std::size_t n = x.size();
    std::vector<double> d2(n, 0.0);
    double d2_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double s = 0.0;
        for (std::size_t k = 0; k < x[i].size(); ++k) {
            const double diff = x[i][k] - x[j][k];
            s += diff * diff;
        }
        d2[j] = s;
        d2_min = std::min(d2_min, s);
    }
    const double beta = 1.0 / (2.0 * sigma_i * sigma_i);
    double zsum = 0.0;
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        w[j] = std::exp(-beta * (d2[j] - d2_min));
        zsum += w[j];
    }
    double h = 0.0;  // entropy in nats
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i || w[j] <= 0.0) continue;
        const double p = w[j] / zsum;
        h -= p * std::log(p);
    }
    return std::exp2(h / std::log(2.0));
}

/// Mean silhouette score over all points, with classes given by labels.
inline double silhouette(const std::vector<std::array<double, 2>>& z,
                         const std::vector<std::string>& labels) {
    const std::size_t n = z.size();
    auto dist = [&](std::size_t i, std::size_t j) {
        const double dx = z[i][0] - z[j][0];
        const double dy = z[i][1] - z[j][1];
        return std::sqrt(dx * dx + dy * dy);
    };
    const std::set<std::string> names(labels.begin(), labels.end());

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::string, std::pair<double, std::size_t>> sums;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            auto& slot = sums[labels[j]];
            slot.first += dist(i, j);
            slot.second += 1;
        }
        double a = 0.0;
        double b = std::numeric_limits<double>::infinity();
        for (const auto& name : names) {
            auto it = sums.find(name);
            const double mean =
                it == sums.end() || it->second.second == 0
                    ? 0.0
                    : it->second.first / static_cast<double>(it->second.second);
            if (name == labels[i]) {
                a = mean;
            } else {
                b = std::min(b, mean);
            }
        }
        total += (b - a) / std::max(a, b);
    }
    return total / static_cast<double>(n);
}

/// Random feature rows, unit-scale Gaussian entries.
inline std::vector<std::vector<double>> random_points(roifc::SplitMix64& rng,
                                                      std::size_t n, std::size_t dim,
                                                      double scale = 1.0) {
    roifc::GaussianSampler gauss(rng.next_u64());
    std::vector<std::vector<double>> x(n, std::vector<double>(dim));
    for (auto& row : x) {
        for (auto& v : row) v = scale * gauss.next();
    }
    return x;
}

}  // namespace oracles
