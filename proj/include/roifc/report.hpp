#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roifc/clustermetrics.hpp"
#include "roifc/core.hpp"
#include "roifc/embed.hpp"
#include "roifc/similarity.hpp"
#include "roifc/stats.hpp"

namespace roifc {

enum class AnalysisMode { Within, Cross };

const char* to_string(AnalysisMode mode);

/// What to analyze and how. `condition` empty means all conditions.
/// `camera_pair` applies to cross mode only; when absent and the data holds
/// exactly two cameras the pair is inferred, otherwise it must be given.
struct ReportOptions {
    AnalysisConfig config{};
    AnalysisMode mode = AnalysisMode::Within;
    std::string condition;
    std::optional<std::pair<std::string, std::string>> camera_pair;
};

/// Record and vehicle counts of one slice of the dataset.
struct SliceCounts {
    std::size_t n_vehicles = 0;
    std::size_t inside_images = 0;
    std::size_t outside_images = 0;
};

/// Similarity aggregates plus the hypothesis test for one analysis group
/// (one condition, and in cross mode one camera pair).
struct SimilarityGroup {
    std::string key;
    std::size_t n_vehicles = 0;  ///< unique vehicles in the group, the test's N
    SimilaritySummary summary;
    TTestResult ttest;
};

/// Everything one pipeline run produced. Serializes to key-sorted JSON;
/// embedding coordinates are kept in memory here and written to a sidecar
/// CSV by the command layer.
struct AnalysisReport {
    AnalysisConfig config{};
    AnalysisMode mode = AnalysisMode::Within;
    std::string condition;  ///< echo of the filter; empty = none
    std::optional<std::pair<std::string, std::string>> camera_pair;

    std::map<std::string, SliceCounts> conditions;
    std::map<std::string, SliceCounts> cameras;
    std::size_t dim = 0;
    std::size_t total_records = 0;
    std::size_t n_vehicles = 0;

    std::vector<SimilarityGroup> similarity;  ///< sorted by key
    EntropySummary entropy_inside;
    EntropySummary entropy_outside;

    Embedding2D embedding;
    /// ROI class per embedded record, aligned with embedding.z. Consumed by
    /// the figure emitters; not part of the JSON document.
    std::vector<RoiFlag> record_roi;
    VarianceReport cluster_inside;
    VarianceReport cluster_outside;
    std::optional<IntraInterReport> intra_inter_inside;   ///< cross mode
    std::optional<IntraInterReport> intra_inter_outside;  ///< cross mode

    /// Key-sorted JSON document, 2-space indent, trailing newline.
    /// Byte-identical across runs with identical inputs and options.
    /// Non-finite numbers appear as the strings "Infinity", "-Infinity", "NaN".
    std::string to_json() const;
};

/// Per-slice counts keyed by condition and by camera.
std::map<std::string, SliceCounts> counts_by_condition(const Dataset& dataset);
std::map<std::string, SliceCounts> counts_by_camera(const Dataset& dataset);

/// Runs the full pipeline on `dataset` (after applying the option filters):
/// per-condition similarity aggregates and hypothesis tests, per-ROI-class
/// entropy, one joint 2-D embedding, per-ROI-class embedding variance, and in
/// cross mode the intra/inter-class variance of each ROI class. All upstream
/// errors propagate unchanged.
AnalysisReport build_report(const Dataset& dataset, const ReportOptions& options);

}  // namespace roifc
