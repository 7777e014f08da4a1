#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "roifc/error.hpp"

namespace roifc {

/// Axis variances of a selected point group plus the derived scatter figures.
struct VarianceReport {
    std::string group;                       ///< "inside", "outside", or a class id
    std::array<double, 2> var_axes{0.0, 0.0};
    double rmse = 0.0;            ///< spread between the two axis variances
    double total_variance = 0.0;  ///< var_axes[0] + var_axes[1]
};

/// Within-class versus between-class scatter of a labeled point set.
struct IntraInterReport {
    std::string scope;
    double intra_class = 0.0;  ///< mean over classes of within-class total variance
    double inter_class = 0.0;  ///< total variance of the class centroids
};

/// Population variance (divide by count) per axis over the selected points.
/// `selection` holds point indices; at least two are required.
std::array<double, 2> axis_variances(const std::vector<std::array<double, 2>>& z,
                                     const std::vector<std::size_t>& selection);

/// sqrt(0.5 * sum_i (var_i - mu)^2) with mu the mean of the two axis
/// variances. With two values this reduces to |var_1 - var_2| / 2.
double variance_rmse(const std::array<double, 2>& var_axes);

/// Bundles axis_variances and variance_rmse for one selection.
VarianceReport make_variance_report(const std::vector<std::array<double, 2>>& z,
                                    const std::vector<std::size_t>& selection,
                                    std::string group);

/// Per-point labels define the classes; requires at least two distinct
/// labels. Classes of size one contribute zero to the intra-class term.
IntraInterReport intra_inter(const std::vector<std::array<double, 2>>& z,
                             const std::vector<std::string>& labels,
                             std::string scope);

}  // namespace roifc
