#include "roifc/core.hpp"

#include <cmath>
#include <utility>

namespace roifc {

namespace {
constexpr const char* kModule = "core";
}

const VehicleRecords& Dataset::vehicle(const std::string& vehicle_id) const {
    auto it = index_.find(vehicle_id);
    if (it == index_.end()) {
        throw Error(ErrorKind::UnknownVehicle, kModule,
                    "no records for vehicle '" + vehicle_id + "'");
    }
    return it->second;
}

Dataset build_dataset(std::vector<FeatureRecord> records) {
    if (records.empty()) {
        throw Error(ErrorKind::EmptyInput, kModule, "record list is empty");
    }

    const std::size_t dim = records.front().feature.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.feature.size() != dim) {
            throw Error(ErrorKind::DimensionMismatch, kModule,
                        "record " + std::to_string(i) + " has dimension " +
                            std::to_string(rec.feature.size()) + ", expected " +
                            std::to_string(dim));
        }
        double sum_sq = 0.0;
        for (double v : rec.feature) {
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::InvalidFeature, kModule,
                            "record " + std::to_string(i) +
                                " contains a non-finite value");
            }
            sum_sq += v * v;
        }
        if (std::sqrt(sum_sq) <= 0.0) {
            throw Error(ErrorKind::InvalidFeature, kModule,
                        "record " + std::to_string(i) + " has zero norm");
        }
    }

    Dataset ds;
    ds.dim_ = dim;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& slot = ds.index_[records[i].vehicle_id];
        if (records[i].roi == RoiFlag::Inside) {
            slot.inside.push_back(i);
        } else {
            slot.outside.push_back(i);
        }
    }
    ds.records_ = std::move(records);
    return ds;
}

Dataset filter_by_condition(const Dataset& dataset, const std::string& condition) {
    std::vector<FeatureRecord> kept;
    for (const auto& rec : dataset.records()) {
        if (rec.condition == condition) kept.push_back(rec);
    }
    if (kept.empty()) {
        throw Error(ErrorKind::EmptyInput, kModule,
                    "no records with condition '" + condition + "'");
    }
    return build_dataset(std::move(kept));
}

Dataset filter_by_cameras(const Dataset& dataset, const std::vector<std::string>& cameras) {
    std::vector<FeatureRecord> kept;
    for (const auto& rec : dataset.records()) {
        for (const auto& cam : cameras) {
            if (rec.camera_id == cam) {
                kept.push_back(rec);
                break;
            }
        }
    }
    if (kept.empty()) {
        throw Error(ErrorKind::EmptyInput, kModule, "no records for the requested cameras");
    }
    return build_dataset(std::move(kept));
}

void AnalysisConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, kModule, "alpha must lie in (0, 1)");
    }
    if (entropy_bins == 0) {
        throw Error(ErrorKind::InvalidArgument, kModule, "entropy_bins must be positive");
    }
    if (!(entropy_log_base > 1.0)) {
        throw Error(ErrorKind::InvalidArgument, kModule, "entropy_log_base must exceed 1");
    }
    if (!(tsne_perplexity > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, kModule, "tsne_perplexity must be positive");
    }
    if (tsne_iterations == 0) {
        throw Error(ErrorKind::InvalidArgument, kModule, "tsne_iterations must be positive");
    }
    if (!(tsne_learning_rate > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, kModule, "tsne_learning_rate must be positive");
    }
    if (!(tsne_early_exaggeration > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, kModule,
                    "tsne_early_exaggeration must be positive");
    }
    if (!(tsne_momentum_early >= 0.0 && tsne_momentum_early < 1.0) ||
        !(tsne_momentum_late >= 0.0 && tsne_momentum_late < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, kModule, "momentum must lie in [0, 1)");
    }
}

}  // namespace roifc
