#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "roifc/core.hpp"

namespace roifc {

/// Symmetrized joint affinities P of the high-dimensional points, plus the
/// calibrated per-row Gaussian bandwidths they were built from.
///
/// p is row-major n x n with p_ii = 0, p_ij = p_ji, and sum_ij p_ij = 1.
struct AffinityMatrix {
    std::size_t n = 0;
    std::vector<double> p;
    std::vector<double> sigma;  ///< bandwidth sigma_i per row, for diagnostics and tests

    double at(std::size_t i, std::size_t j) const { return p[i * n + j]; }
};

/// 2-D embedding produced by run_tsne.
struct Embedding2D {
    std::vector<std::array<double, 2>> z;
    double kl_initial = 0.0;  ///< KL divergence at the initial layout
    double kl_final = 0.0;    ///< KL divergence after the last iteration
    std::size_t iterations_run = 0;
    std::uint64_t seed = 0;
};

/// Builds the joint affinity matrix for n x D row-major features.
///
/// For each row, the Gaussian bandwidth is bisected (in log space, at most
/// 200 steps) until the conditional distribution's perplexity 2^H matches
/// `perplexity` within 1e-5; conditionals are then symmetrized as
/// p_ij = (p_j|i + p_i|j) / (2n). Requires n >= 3 and perplexity < n - 1.
AffinityMatrix calibrate_affinities(const std::vector<std::vector<double>>& features,
                                    double perplexity);

/// Convenience overload over a dataset's feature vectors (record order).
AffinityMatrix calibrate_affinities(const Dataset& dataset, double perplexity);

/// Gradient of the KL divergence at layout z:
///   dC/dz_i = 4 * sum_j (p_ij - q_ij) * (z_i - z_j) / (1 + |z_i - z_j|^2)
/// where q is the normalized Student-t (df = 1) kernel of z.
std::vector<std::array<double, 2>> tsne_gradient(
    const AffinityMatrix& p, const std::vector<std::array<double, 2>>& z);

/// KL(P || Q(z)) = sum_{p_ij > 0} p_ij log(p_ij / q_ij). Non-negative.
double kl_divergence(const AffinityMatrix& p,
                     const std::vector<std::array<double, 2>>& z);

/// Gradient descent with momentum from a seeded Gaussian initialization
/// (scale 1e-4). Affinities are multiplied by config.tsne_early_exaggeration
/// for the first config.tsne_exaggeration_iters iterations; momentum switches
/// from early to late at config.tsne_momentum_switch_iter. Bit-reproducible
/// for a fixed seed. Throws NumericalDivergence if any coordinate becomes
/// non-finite, reporting the iteration.
Embedding2D run_tsne(const AffinityMatrix& p, const AnalysisConfig& config);

}  // namespace roifc
