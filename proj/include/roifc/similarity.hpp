#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "roifc/core.hpp"

namespace roifc {

/// The two pair populations compared by the consistency analysis: both
/// records inside the ROI, or one inside and one outside.
enum class PairKind { InsideInside, InsideOutside };

/// Which records are eligible to form a pair.
///
/// Within a single camera view, InsideInside pairs are all unordered pairs
/// of a vehicle's Inside records and InsideOutside pairs are the full
/// Inside x Outside cross product. Across a camera pair (a, b), the first
/// element must be an Inside record from camera a and the second an Inside
/// (respectively Outside) record from camera b.
struct PairingPolicy {
    enum class Mode { Within, CrossCamera };

    Mode mode = Mode::Within;
    std::string camera_a;
    std::string camera_b;

    static PairingPolicy within() { return {}; }
    static PairingPolicy cross_camera(std::string a, std::string b) {
        return {Mode::CrossCamera, std::move(a), std::move(b)};
    }
};

/// cos(u, v) = (u . v) / (|u| |v|), clamped to [-1, 1] to absorb rounding.
/// Both vectors must be non-degenerate (guaranteed for dataset features).
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// All eligible pairs of record indices for one vehicle, in lexicographic
/// (first, second) order. Deterministic for a given dataset and policy.
std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(
    const Dataset& dataset, const std::string& vehicle_id, PairKind kind,
    const PairingPolicy& policy = PairingPolicy::within());

/// Per-vehicle pair counts and mean pair similarities. Means are absent when
/// the vehicle has no pair of that kind.
struct VehiclePairStats {
    std::string vehicle_id;
    std::size_t n_inside = 0;
    std::size_t n_cross = 0;
    std::optional<double> mean_inside;
    std::optional<double> mean_cross;
};

/// Vehicle-level aggregates of pair cosine similarity.
///
/// mu_* is the unweighted mean over contributing vehicles of the per-vehicle
/// mean pair similarity. sigma_* is the square root of the vehicle-mean of
/// per-vehicle mean squared deviations taken from the global mu_* (not from
/// the per-vehicle mean). sigma_*_centered is the conventional per-vehicle-
/// centered variant, reported alongside for comparison.
struct SimilaritySummary {
    double mu_inside = 0.0;
    double sigma_inside = 0.0;
    double mu_cross = 0.0;
    double sigma_cross = 0.0;
    double sigma_inside_centered = 0.0;
    double sigma_cross_centered = 0.0;
    std::size_t n_vehicles_inside = 0;  ///< vehicles with at least one inside pair
    std::size_t n_vehicles_cross = 0;   ///< vehicles with at least one cross pair
    std::vector<VehiclePairStats> per_vehicle;  ///< sorted by vehicle_id, all vehicles
};

/// Pair similarities of one vehicle, used by the aggregation seam below.
struct VehiclePairSims {
    std::string vehicle_id;
    std::vector<double> inside;
    std::vector<double> cross;
};

/// Aggregates already-computed pair similarities. summarize() is a thin
/// wrapper that enumerates pairs and evaluates the cosine first; tests feed
/// hand-picked similarity values straight into this.
SimilaritySummary summarize_pair_sims(const std::vector<VehiclePairSims>& vehicles);

/// Full pipeline: enumerate pairs per vehicle under `policy`, evaluate the
/// cosine for each, and aggregate. Vehicles lacking a pair kind are excluded
/// from that aggregate's vehicle count. Throws InsufficientPairs when either
/// aggregate has no contributing vehicle.
SimilaritySummary summarize(const Dataset& dataset,
                            const PairingPolicy& policy = PairingPolicy::within());

}  // namespace roifc
