#include "roifc/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace roifc {

namespace {

constexpr const char* kModule = "similarity";

std::vector<std::size_t> in_camera(const Dataset& ds, const std::vector<std::size_t>& indices,
                                   const std::string& camera) {
    std::vector<std::size_t> out;
    for (std::size_t idx : indices) {
        if (ds.records()[idx].camera_id == camera) out.push_back(idx);
    }
    return out;
}

struct RunningMoments {
    std::size_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double v) {
        ++n;
        sum += v;
        sum_sq += v * v;
    }
    double mean() const { return sum / static_cast<double>(n); }
    /// Mean squared deviation from an external center.
    double msd_about(double center) const {
        const double k = static_cast<double>(n);
        return sum_sq / k - 2.0 * center * (sum / k) + center * center;
    }
};

}  // namespace

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw Error(ErrorKind::DimensionMismatch, kModule,
                    "vectors have dimensions " + std::to_string(u.size()) + " and " +
                        std::to_string(v.size()));
    }
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    const double value = dot / (std::sqrt(nu) * std::sqrt(nv));
    return std::clamp(value, -1.0, 1.0);
}

std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(
    const Dataset& dataset, const std::string& vehicle_id, PairKind kind,
    const PairingPolicy& policy) {
    const VehicleRecords& recs = dataset.vehicle(vehicle_id);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    if (policy.mode == PairingPolicy::Mode::Within) {
        if (kind == PairKind::InsideInside) {
            const auto& inside = recs.inside;
            for (std::size_t a = 0; a < inside.size(); ++a) {
                for (std::size_t b = a + 1; b < inside.size(); ++b) {
                    pairs.emplace_back(inside[a], inside[b]);
                }
            }
        } else {
            for (std::size_t i : recs.inside) {
                for (std::size_t o : recs.outside) {
                    pairs.emplace_back(i, o);
                }
            }
        }
        return pairs;
    }

    // Cross-camera: first element from camera_a Inside, second from camera_b.
    const auto first = in_camera(dataset, recs.inside, policy.camera_a);
    const auto second = kind == PairKind::InsideInside
                            ? in_camera(dataset, recs.inside, policy.camera_b)
                            : in_camera(dataset, recs.outside, policy.camera_b);
    for (std::size_t a : first) {
        for (std::size_t b : second) {
            pairs.emplace_back(a, b);
        }
    }
    return pairs;
}

SimilaritySummary summarize_pair_sims(const std::vector<VehiclePairSims>& vehicles) {
    SimilaritySummary out;

    std::vector<RunningMoments> inside_moments, cross_moments;
    inside_moments.reserve(vehicles.size());
    cross_moments.reserve(vehicles.size());

    for (const auto& veh : vehicles) {
        RunningMoments mi, mc;
        for (double s : veh.inside) mi.add(s);
        for (double s : veh.cross) mc.add(s);

        VehiclePairStats stats;
        stats.vehicle_id = veh.vehicle_id;
        stats.n_inside = mi.n;
        stats.n_cross = mc.n;
        if (mi.n > 0) stats.mean_inside = mi.mean();
        if (mc.n > 0) stats.mean_cross = mc.mean();
        out.per_vehicle.push_back(std::move(stats));

        inside_moments.push_back(mi);
        cross_moments.push_back(mc);
    }

    // Outer mean over contributing vehicles, unweighted by pair count.
    auto aggregate = [](const std::vector<RunningMoments>& moments, double& mu,
                        double& sigma, double& sigma_centered, std::size_t& n_vehicles) {
        double mean_sum = 0.0;
        std::size_t count = 0;
        for (const auto& m : moments) {
            if (m.n == 0) continue;
            mean_sum += m.mean();
            ++count;
        }
        n_vehicles = count;
        if (count == 0) return false;
        mu = mean_sum / static_cast<double>(count);

        double dev_sum = 0.0;
        double dev_centered_sum = 0.0;
        for (const auto& m : moments) {
            if (m.n == 0) continue;
            dev_sum += m.msd_about(mu);
            dev_centered_sum += m.msd_about(m.mean());
        }
        sigma = std::sqrt(std::max(0.0, dev_sum / static_cast<double>(count)));
        sigma_centered =
            std::sqrt(std::max(0.0, dev_centered_sum / static_cast<double>(count)));
        return true;
    };

    if (!aggregate(inside_moments, out.mu_inside, out.sigma_inside,
                   out.sigma_inside_centered, out.n_vehicles_inside)) {
        throw Error(ErrorKind::InsufficientPairs, kModule,
                    "inside aggregate undefined: no vehicle has an inside-inside pair");
    }
    if (!aggregate(cross_moments, out.mu_cross, out.sigma_cross,
                   out.sigma_cross_centered, out.n_vehicles_cross)) {
        throw Error(ErrorKind::InsufficientPairs, kModule,
                    "cross aggregate undefined: no vehicle has an inside-outside pair");
    }
    return out;
}

SimilaritySummary summarize(const Dataset& dataset, const PairingPolicy& policy) {
    std::vector<VehiclePairSims> sims;
    sims.reserve(dataset.vehicle_count());

    const auto& records = dataset.records();
    for (const auto& [vehicle_id, slots] : dataset.vehicle_index()) {
        (void)slots;
        VehiclePairSims veh;
        veh.vehicle_id = vehicle_id;
        for (auto [a, b] : enumerate_pairs(dataset, vehicle_id, PairKind::InsideInside, policy)) {
            veh.inside.push_back(cosine_similarity(records[a].feature, records[b].feature));
        }
        for (auto [a, b] : enumerate_pairs(dataset, vehicle_id, PairKind::InsideOutside, policy)) {
            veh.cross.push_back(cosine_similarity(records[a].feature, records[b].feature));
        }
        sims.push_back(std::move(veh));
    }
    return summarize_pair_sims(sims);
}

}  // namespace roifc
