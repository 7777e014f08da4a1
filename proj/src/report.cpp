#include "roifc/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace roifc {

namespace {

constexpr const char* kModule = "report";

using json = nlohmann::json;

// Non-finite doubles have no JSON number representation; nlohmann would emit
// null. String sentinels keep the value readable and round-trippable.
json num(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    return v;
}

json jsonify(const SliceCounts& c) {
    return {{"n_vehicles", c.n_vehicles},
            {"inside_images", c.inside_images},
            {"outside_images", c.outside_images}};
}

json jsonify(const SimilaritySummary& s) {
    json per_vehicle = json::object();
    for (const auto& v : s.per_vehicle) {
        per_vehicle[v.vehicle_id] = {
            {"n_inside", v.n_inside},
            {"n_cross", v.n_cross},
            {"mean_inside", v.mean_inside ? num(*v.mean_inside) : json()},
            {"mean_cross", v.mean_cross ? num(*v.mean_cross) : json()},
        };
    }
    return {{"mu_inside", num(s.mu_inside)},
            {"sigma_inside", num(s.sigma_inside)},
            {"mu_cross", num(s.mu_cross)},
            {"sigma_cross", num(s.sigma_cross)},
            {"sigma_inside_centered", num(s.sigma_inside_centered)},
            {"sigma_cross_centered", num(s.sigma_cross_centered)},
            {"n_vehicles_inside", s.n_vehicles_inside},
            {"n_vehicles_cross", s.n_vehicles_cross},
            {"per_vehicle", std::move(per_vehicle)}};
}

json jsonify(const TTestResult& t) {
    json j = {{"t", num(t.t)},
              {"df", num(t.df)},
              {"p_one_sided", num(t.p_one_sided)},
              {"significant", t.significant},
              {"alpha", num(t.alpha)}};
    if (t.vehicle_level.valid) {
        j["vehicle_level"] = {{"t", num(t.vehicle_level.t)},
                              {"df", num(t.vehicle_level.df)},
                              {"p_one_sided", num(t.vehicle_level.p_one_sided)}};
    } else {
        j["vehicle_level"] = json();
    }
    return j;
}

json jsonify(const EntropySummary& e) {
    json per_vehicle = json::object();
    for (const auto& [id, h] : e.per_vehicle_entropy) per_vehicle[id] = num(h);
    json ranges = json::object();
    for (const auto& [id, r] : e.bin_edges) ranges[id] = {num(r[0]), num(r[1])};
    return {{"mean_entropy", num(e.mean_entropy)},
            {"bins", e.bins},
            {"log_base", num(e.log_base)},
            {"per_vehicle_entropy", std::move(per_vehicle)},
            {"per_vehicle_range", std::move(ranges)}};
}

json jsonify(const VarianceReport& v) {
    return {{"group", v.group},
            {"var_z1", num(v.var_axes[0])},
            {"var_z2", num(v.var_axes[1])},
            {"rmse", num(v.rmse)},
            {"total_variance", num(v.total_variance)}};
}

json jsonify(const IntraInterReport& r) {
    return {{"scope", r.scope},
            {"intra_class", num(r.intra_class)},
            {"inter_class", num(r.inter_class)}};
}

std::vector<std::string> sorted_conditions(const Dataset& dataset) {
    std::set<std::string> conditions;
    for (const auto& rec : dataset.records()) conditions.insert(rec.condition);
    return {conditions.begin(), conditions.end()};
}

std::set<std::string> camera_ids(const Dataset& dataset) {
    std::set<std::string> cameras;
    for (const auto& rec : dataset.records()) cameras.insert(rec.camera_id);
    return cameras;
}

std::pair<std::string, std::string> resolve_camera_pair(const Dataset& dataset,
                                                        const ReportOptions& options) {
    const auto cameras = camera_ids(dataset);
    if (options.camera_pair) {
        const auto& [a, b] = *options.camera_pair;
        if (a == b) {
            throw Error(ErrorKind::InvalidArgument, kModule,
                        "camera pair must name two distinct cameras, got '" + a + "' twice");
        }
        for (const auto& id : {a, b}) {
            if (!cameras.count(id)) {
                throw Error(ErrorKind::EmptySelection, kModule,
                            "camera '" + id + "' has no records");
            }
        }
        return *options.camera_pair;
    }
    if (cameras.size() != 2) {
        throw Error(ErrorKind::InvalidArgument, kModule,
                    "cross mode with " + std::to_string(cameras.size()) +
                        " cameras requires an explicit camera pair");
    }
    auto it = cameras.begin();
    std::string a = *it++;
    return {std::move(a), *it};
}

}  // namespace

const char* to_string(AnalysisMode mode) {
    return mode == AnalysisMode::Within ? "within" : "cross";
}

std::map<std::string, SliceCounts> counts_by_condition(const Dataset& dataset) {
    std::map<std::string, SliceCounts> out;
    std::map<std::string, std::set<std::string>> vehicles;
    for (const auto& rec : dataset.records()) {
        auto& c = out[rec.condition];
        (rec.roi == RoiFlag::Inside ? c.inside_images : c.outside_images) += 1;
        vehicles[rec.condition].insert(rec.vehicle_id);
    }
    for (auto& [condition, c] : out) c.n_vehicles = vehicles[condition].size();
    return out;
}

std::map<std::string, SliceCounts> counts_by_camera(const Dataset& dataset) {
    std::map<std::string, SliceCounts> out;
    std::map<std::string, std::set<std::string>> vehicles;
    for (const auto& rec : dataset.records()) {
        auto& c = out[rec.camera_id];
        (rec.roi == RoiFlag::Inside ? c.inside_images : c.outside_images) += 1;
        vehicles[rec.camera_id].insert(rec.vehicle_id);
    }
    for (auto& [camera, c] : out) c.n_vehicles = vehicles[camera].size();
    return out;
}

AnalysisReport build_report(const Dataset& dataset, const ReportOptions& options) {
    options.config.validate();

    AnalysisReport report;
    report.config = options.config;
    report.mode = options.mode;
    report.condition = options.condition;

    // One active dataset feeds every stage: the condition filter first, then
    // in cross mode the restriction to the two compared cameras.
    Dataset active =
        options.condition.empty() ? dataset : filter_by_condition(dataset, options.condition);
    PairingPolicy policy = PairingPolicy::within();
    if (options.mode == AnalysisMode::Cross) {
        auto pair = resolve_camera_pair(active, options);
        active = filter_by_cameras(active, {pair.first, pair.second});
        policy = PairingPolicy::cross_camera(pair.first, pair.second);
        report.camera_pair = std::move(pair);
    }

    report.conditions = counts_by_condition(active);
    report.cameras = counts_by_camera(active);
    report.dim = active.dim();
    report.total_records = active.records().size();
    report.n_vehicles = active.vehicle_count();

    for (const auto& condition : sorted_conditions(active)) {
        Dataset slice = filter_by_condition(active, condition);
        SimilarityGroup group;
        group.key = options.mode == AnalysisMode::Within
                        ? condition
                        : condition + "|" + policy.camera_a + "," + policy.camera_b;
        group.n_vehicles = slice.vehicle_count();
        group.summary = summarize(slice, policy);
        group.ttest = hypothesis_test(group.summary, group.n_vehicles, options.config);
        report.similarity.push_back(std::move(group));
    }

    report.entropy_inside = entropy_summary(active, RoiFlag::Inside, options.config);
    report.entropy_outside = entropy_summary(active, RoiFlag::Outside, options.config);

    const AffinityMatrix affinities =
        calibrate_affinities(active, options.config.tsne_perplexity);
    report.embedding = run_tsne(affinities, options.config);

    std::vector<std::size_t> inside_idx;
    std::vector<std::size_t> outside_idx;
    report.record_roi.reserve(active.records().size());
    for (std::size_t i = 0; i < active.records().size(); ++i) {
        report.record_roi.push_back(active.records()[i].roi);
        (active.records()[i].roi == RoiFlag::Inside ? inside_idx : outside_idx).push_back(i);
    }
    report.cluster_inside = make_variance_report(report.embedding.z, inside_idx, "inside");
    report.cluster_outside = make_variance_report(report.embedding.z, outside_idx, "outside");

    if (options.mode == AnalysisMode::Cross) {
        auto labeled_subset = [&](const std::vector<std::size_t>& idx) {
            std::vector<std::array<double, 2>> z;
            std::vector<std::string> labels;
            z.reserve(idx.size());
            labels.reserve(idx.size());
            for (std::size_t i : idx) {
                z.push_back(report.embedding.z[i]);
                labels.push_back(active.records()[i].vehicle_id);
            }
            return std::make_pair(std::move(z), std::move(labels));
        };
        auto [zi, li] = labeled_subset(inside_idx);
        report.intra_inter_inside = intra_inter(zi, li, "inROI-cross-camera");
        auto [zo, lo] = labeled_subset(outside_idx);
        report.intra_inter_outside = intra_inter(zo, lo, "outROI-cross-camera");
    }

    return report;
}

std::string AnalysisReport::to_json() const {
    json root;
    root["schema_version"] = 1;
    root["mode"] = roifc::to_string(mode);
    root["selection"] = {
        {"condition", condition.empty() ? json() : json(condition)},
        {"camera_pair",
         camera_pair ? json{camera_pair->first, camera_pair->second} : json()},
    };
    root["config"] = {
        {"alpha", num(config.alpha)},
        {"entropy_bins", config.entropy_bins},
        {"entropy_log_base", num(config.entropy_log_base)},
        {"tsne_perplexity", num(config.tsne_perplexity)},
        {"tsne_iterations", config.tsne_iterations},
        {"tsne_learning_rate", num(config.tsne_learning_rate)},
        {"tsne_early_exaggeration", num(config.tsne_early_exaggeration)},
        {"tsne_exaggeration_iters", config.tsne_exaggeration_iters},
        {"tsne_momentum_early", num(config.tsne_momentum_early)},
        {"tsne_momentum_late", num(config.tsne_momentum_late)},
        {"tsne_momentum_switch_iter", config.tsne_momentum_switch_iter},
        {"rng_seed", config.rng_seed},
    };

    json condition_counts = json::object();
    for (const auto& [name, c] : conditions) condition_counts[name] = jsonify(c);
    json camera_counts = json::object();
    for (const auto& [name, c] : cameras) camera_counts[name] = jsonify(c);
    root["dataset_summary"] = {{"conditions", std::move(condition_counts)},
                               {"cameras", std::move(camera_counts)},
                               {"dim", dim},
                               {"total_records", total_records},
                               {"n_vehicles", n_vehicles}};

    json sim = json::object();
    for (const auto& group : similarity) {
        sim[group.key] = {{"n_vehicles", group.n_vehicles},
                          {"summary", jsonify(group.summary)},
                          {"ttest", jsonify(group.ttest)}};
    }
    root["similarity"] = std::move(sim);

    root["entropy"] = {{"inside", jsonify(entropy_inside)},
                       {"outside", jsonify(entropy_outside)}};

    root["embedding"] = {{"n_points", embedding.z.size()},
                         {"iterations_run", embedding.iterations_run},
                         {"seed", embedding.seed},
                         {"kl_initial", num(embedding.kl_initial)},
                         {"kl_final", num(embedding.kl_final)},
                         {"coordinates_file", "embedding.csv"}};

    json cluster = {{"inside", jsonify(cluster_inside)},
                    {"outside", jsonify(cluster_outside)}};
    if (intra_inter_inside && intra_inter_outside) {
        cluster["intra_inter"] = {{"inside", jsonify(*intra_inter_inside)},
                                  {"outside", jsonify(*intra_inter_outside)}};
    }
    root["cluster"] = std::move(cluster);

    return root.dump(2) + "\n";
}

}  // namespace roifc
