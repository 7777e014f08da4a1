#include "roifc/clustermetrics.hpp"

#include <cmath>
#include <map>

namespace roifc {

namespace {

constexpr const char* kModule = "clustermetrics";

/// Population variance per axis of a point list given directly.
std::array<double, 2> variances_of(const std::vector<std::array<double, 2>>& pts) {
    const double n = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p[0];
        my += p[1];
    }
    mx /= n;
    my /= n;
    double vx = 0.0, vy = 0.0;
    for (const auto& p : pts) {
        vx += (p[0] - mx) * (p[0] - mx);
        vy += (p[1] - my) * (p[1] - my);
    }
    return {vx / n, vy / n};
}

}  // namespace

std::array<double, 2> axis_variances(const std::vector<std::array<double, 2>>& z,
                                     const std::vector<std::size_t>& selection) {
    if (selection.size() < 2) {
        throw Error(ErrorKind::TooFewPoints, kModule,
                    "variance needs at least 2 points, got " +
                        std::to_string(selection.size()));
    }
    std::vector<std::array<double, 2>> pts;
    pts.reserve(selection.size());
    for (std::size_t idx : selection) pts.push_back(z.at(idx));
    return variances_of(pts);
}

double variance_rmse(const std::array<double, 2>& var_axes) {
    const double mu = 0.5 * (var_axes[0] + var_axes[1]);
    const double d0 = var_axes[0] - mu;
    const double d1 = var_axes[1] - mu;
    return std::sqrt(0.5 * (d0 * d0 + d1 * d1));
}

VarianceReport make_variance_report(const std::vector<std::array<double, 2>>& z,
                                    const std::vector<std::size_t>& selection,
                                    std::string group) {
    VarianceReport report;
    report.group = std::move(group);
    report.var_axes = axis_variances(z, selection);
    report.rmse = variance_rmse(report.var_axes);
    report.total_variance = report.var_axes[0] + report.var_axes[1];
    return report;
}

IntraInterReport intra_inter(const std::vector<std::array<double, 2>>& z,
                             const std::vector<std::string>& labels,
                             std::string scope) {
    if (labels.size() != z.size()) {
        throw Error(ErrorKind::ShapeMismatch, kModule,
                    "labels and points differ in length");
    }
    if (z.empty()) {
        throw Error(ErrorKind::TooFewPoints, kModule, "no points given");
    }

    std::map<std::string, std::vector<std::array<double, 2>>> classes;
    for (std::size_t i = 0; i < z.size(); ++i) {
        classes[labels[i]].push_back(z[i]);
    }
    if (classes.size() < 2) {
        throw Error(ErrorKind::SingleClass, kModule,
                    "at least 2 classes required, got " + std::to_string(classes.size()));
    }

    IntraInterReport report;
    report.scope = std::move(scope);

    std::vector<std::array<double, 2>> centroids;
    double intra_sum = 0.0;
    for (const auto& [label, pts] : classes) {
        (void)label;
        double cx = 0.0, cy = 0.0;
        for (const auto& p : pts) {
            cx += p[0];
            cy += p[1];
        }
        cx /= static_cast<double>(pts.size());
        cy /= static_cast<double>(pts.size());
        centroids.push_back({cx, cy});
        if (pts.size() >= 2) {
            const auto v = variances_of(pts);
            intra_sum += v[0] + v[1];
        }
        // Singleton classes contribute zero spread.
    }
    report.intra_class = intra_sum / static_cast<double>(classes.size());
    const auto cv = variances_of(centroids);
    report.inter_class = cv[0] + cv[1];
    return report;
}

}  // namespace roifc
