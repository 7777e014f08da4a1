#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "roifc/error.hpp"

namespace roifc {

/// Whether a crop was taken inside or outside the region of interest.
/// The geometric decision is made upstream; records only carry the flag.
enum class RoiFlag : std::uint8_t { Inside = 0, Outside = 1 };

inline const char* to_string(RoiFlag roi) {
    return roi == RoiFlag::Inside ? "inside" : "outside";
}

/// One observation of one vehicle: identity keys plus the extracted feature
/// vector. Features are held in double precision regardless of how they were
/// produced; every aggregate downstream is accumulation-sensitive.
struct FeatureRecord {
    std::string vehicle_id;   ///< ground-truth identity, unique per physical vehicle
    std::string camera_id;
    std::string condition;    ///< capture condition tag, e.g. "sunny1"
    std::uint64_t frame_index = 0;
    RoiFlag roi = RoiFlag::Inside;
    std::vector<double> feature;
};

/// Record indices of one vehicle, split by ROI class, in ingestion order.
struct VehicleRecords {
    std::vector<std::size_t> inside;
    std::vector<std::size_t> outside;
};

/// Immutable, validated collection of records with a per-vehicle index.
/// Construction is the only mutation point; afterwards the dataset is safe
/// to share across concurrent readers.
class Dataset {
public:
    const std::vector<FeatureRecord>& records() const noexcept { return records_; }
    std::size_t dim() const noexcept { return dim_; }

    /// vehicle_id -> index lists; std::map so iteration is in sorted id order,
    /// which fixes the reduction order of every vehicle-level aggregate.
    const std::map<std::string, VehicleRecords>& vehicle_index() const noexcept {
        return index_;
    }

    /// Number of unique vehicle ids.
    std::size_t vehicle_count() const noexcept { return index_.size(); }

    const VehicleRecords& vehicle(const std::string& vehicle_id) const;

private:
    friend Dataset build_dataset(std::vector<FeatureRecord> records);

    std::vector<FeatureRecord> records_;
    std::size_t dim_ = 0;
    std::map<std::string, VehicleRecords> index_;
};

/// Validates records and builds the indexed dataset. Rejects an empty list,
/// mixed feature dimensions, non-finite values, and zero-norm vectors.
Dataset build_dataset(std::vector<FeatureRecord> records);

/// Keeps only records matching `condition`; order is preserved.
Dataset filter_by_condition(const Dataset& dataset, const std::string& condition);

/// Keeps only records whose camera_id is in `cameras`; order is preserved.
Dataset filter_by_cameras(const Dataset& dataset, const std::vector<std::string>& cameras);

/// Every knob of the analysis pipeline. Defaults match the reference
/// figures; all fields are echoed verbatim into each report for provenance.
struct AnalysisConfig {
    double alpha = 0.05;                      ///< one-sided significance level
    std::size_t entropy_bins = 32;
    double entropy_log_base = 2.0;
    double tsne_perplexity = 30.0;
    std::size_t tsne_iterations = 1000;
    double tsne_learning_rate = 200.0;
    double tsne_early_exaggeration = 12.0;
    std::size_t tsne_exaggeration_iters = 250;
    double tsne_momentum_early = 0.5;
    double tsne_momentum_late = 0.8;
    std::size_t tsne_momentum_switch_iter = 250;
    std::uint64_t rng_seed = 42;

    /// Throws InvalidArgument on any out-of-range field.
    void validate() const;
};

}  // namespace roifc
