#include "roifc/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "roifc/rng.hpp"

namespace roifc {

namespace {

constexpr const char* kModule = "embed";
constexpr double kPerplexityTolerance = 1e-5;
constexpr int kMaxBisectionSteps = 200;

/// Row-major squared Euclidean distance matrix.
std::vector<double> squared_distances(const std::vector<std::vector<double>>& x) {
    const std::size_t n = x.size();
    std::vector<double> d2(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double acc = 0.0;
            const auto& xi = x[i];
            const auto& xj = x[j];
            for (std::size_t k = 0; k < xi.size(); ++k) {
                const double diff = xi[k] - xj[k];
                acc += diff * diff;
            }
            d2[i * n + j] = acc;
            d2[j * n + i] = acc;
        }
    }
    return d2;
}

/// Fills `row` with the conditional distribution p_{j|i} for precision
/// beta = 1 / (2 sigma^2) and returns its perplexity 2^H. Exponents are
/// shifted by the row's minimum distance, which cancels in the
/// normalization but avoids total underflow at large beta.
double conditional_row(const double* d2_row, std::size_t n, std::size_t i, double beta,
                       std::vector<double>& row) {
    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (j != i) d_min = std::min(d_min, d2_row[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            row[j] = 0.0;
            continue;
        }
        row[j] = std::exp(-beta * (d2_row[j] - d_min));
        sum += row[j];
    }
    double entropy_nats = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        row[j] /= sum;
        if (row[j] > 0.0) entropy_nats -= row[j] * std::log(row[j]);
    }
    return std::exp(entropy_nats);
}

/// Student-t kernel normalizer Z = sum_{i != j} 1 / (1 + |z_i - z_j|^2).
double kernel_normalizer(const std::vector<std::array<double, 2>>& z) {
    const std::size_t n = z.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = z[i][0] - z[j][0];
            const double dy = z[i][1] - z[j][1];
            total += 1.0 / (1.0 + dx * dx + dy * dy);
        }
    }
    return 2.0 * total;
}

/// Core gradient with the affinities scaled by p_scale (1 during the plain
/// phase, the exaggeration factor during the early phase).
void gradient_into(const AffinityMatrix& p, const std::vector<std::array<double, 2>>& z,
                   double p_scale, std::vector<std::array<double, 2>>& grad) {
    const std::size_t n = z.size();
    const double z_norm = kernel_normalizer(z);
    grad.assign(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = z[i][0] - z[j][0];
            const double dy = z[i][1] - z[j][1];
            const double kernel = 1.0 / (1.0 + dx * dx + dy * dy);
            const double q = kernel / z_norm;
            const double coeff = 4.0 * (p_scale * p.at(i, j) - q) * kernel;
            grad[i][0] += coeff * dx;
            grad[i][1] += coeff * dy;
            grad[j][0] -= coeff * dx;
            grad[j][1] -= coeff * dy;
        }
    }
}

}  // namespace

AffinityMatrix calibrate_affinities(const std::vector<std::vector<double>>& features,
                                    double perplexity) {
    const std::size_t n = features.size();
    if (n < 3) {
        throw Error(ErrorKind::InvalidArgument, kModule,
                    "at least 3 points required, got " + std::to_string(n));
    }
    for (const auto& row : features) {
        if (row.size() != features.front().size()) {
            throw Error(ErrorKind::DimensionMismatch, kModule,
                        "feature rows have mixed dimensions");
        }
    }
    if (!(perplexity > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, kModule, "perplexity must be positive");
    }
    if (perplexity >= static_cast<double>(n - 1)) {
        throw Error(ErrorKind::PerplexityTooLarge, kModule,
                    "perplexity " + std::to_string(perplexity) +
                        " must be below n - 1 = " + std::to_string(n - 1));
    }

    const std::vector<double> d2 = squared_distances(features);
    std::vector<double> conditional(n * n, 0.0);
    AffinityMatrix result;
    result.n = n;
    result.sigma.resize(n);

    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* d2_row = &d2[i * n];

        double d_max = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) d_max = std::max(d_max, d2_row[j]);
        }
        if (d_max == 0.0) {
            throw Error(ErrorKind::DuplicatePointsDegenerate, kModule,
                        "row " + std::to_string(i) +
                            ": all pairwise distances are zero");
        }

        // Bracket the precision, then bisect in log space.
        double beta = 1.0;
        double perp = conditional_row(d2_row, n, i, beta, row);
        double beta_lo = beta, beta_hi = beta;
        if (perp > perplexity) {
            while (perp > perplexity && beta_hi < 1e200) {
                beta_lo = beta_hi;
                beta_hi *= 2.0;
                perp = conditional_row(d2_row, n, i, beta_hi, row);
            }
            beta = beta_hi;
        } else {
            while (perp < perplexity && beta_lo > 1e-200) {
                beta_hi = beta_lo;
                beta_lo *= 0.5;
                perp = conditional_row(d2_row, n, i, beta_lo, row);
            }
            beta = beta_lo;
        }
        // Bisect until the tolerance is met or the step cap is reached. Some
        // geometries (e.g. all pairwise distances equal) pin the perplexity
        // at a constant; the cap then yields the closest attainable value.
        for (int step = 0; step < kMaxBisectionSteps &&
                           std::fabs(perp - perplexity) > kPerplexityTolerance;
             ++step) {
            // Midpoint in log space; the factored form cannot overflow even
            // when both brackets sit near the 1e200 search limit.
            beta = std::sqrt(beta_lo) * std::sqrt(beta_hi);
            perp = conditional_row(d2_row, n, i, beta, row);
            if (perp > perplexity) {
                beta_lo = beta;
            } else {
                beta_hi = beta;
            }
        }
        result.sigma[i] = 1.0 / std::sqrt(2.0 * beta);
        std::copy(row.begin(), row.end(), conditional.begin() + i * n);
    }

    // Symmetrize: p_ij = (p_j|i + p_i|j) / (2n).
    result.p.assign(n * n, 0.0);
    const double scale = 1.0 / (2.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value = (conditional[i * n + j] + conditional[j * n + i]) * scale;
            result.p[i * n + j] = value;
            result.p[j * n + i] = value;
        }
    }
    return result;
}

AffinityMatrix calibrate_affinities(const Dataset& dataset, double perplexity) {
    std::vector<std::vector<double>> features;
    features.reserve(dataset.records().size());
    for (const auto& rec : dataset.records()) features.push_back(rec.feature);
    return calibrate_affinities(features, perplexity);
}

std::vector<std::array<double, 2>> tsne_gradient(
    const AffinityMatrix& p, const std::vector<std::array<double, 2>>& z) {
    if (z.size() != p.n) {
        throw Error(ErrorKind::ShapeMismatch, kModule,
                    "layout has " + std::to_string(z.size()) + " rows, affinities " +
                        std::to_string(p.n));
    }
    std::vector<std::array<double, 2>> grad;
    gradient_into(p, z, 1.0, grad);
    return grad;
}

double kl_divergence(const AffinityMatrix& p,
                     const std::vector<std::array<double, 2>>& z) {
    if (z.size() != p.n) {
        throw Error(ErrorKind::ShapeMismatch, kModule,
                    "layout has " + std::to_string(z.size()) + " rows, affinities " +
                        std::to_string(p.n));
    }
    const std::size_t n = p.n;
    const double z_norm = kernel_normalizer(z);
    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p_ij = p.at(i, j);
            if (p_ij <= 0.0) continue;
            const double dx = z[i][0] - z[j][0];
            const double dy = z[i][1] - z[j][1];
            const double q_ij = 1.0 / ((1.0 + dx * dx + dy * dy) * z_norm);
            kl += 2.0 * p_ij * std::log(p_ij / q_ij);
        }
    }
    return kl;
}

Embedding2D run_tsne(const AffinityMatrix& p, const AnalysisConfig& config) {
    config.validate();
    const std::size_t n = p.n;
    if (n == 0 || p.p.size() != n * n) {
        throw Error(ErrorKind::ShapeMismatch, kModule, "affinity matrix is malformed");
    }

    Embedding2D out;
    out.seed = config.rng_seed;
    out.z.resize(n);

    GaussianSampler gauss(config.rng_seed);
    for (auto& point : out.z) {
        point[0] = 1e-4 * gauss.next();
        point[1] = 1e-4 * gauss.next();
    }
    out.kl_initial = kl_divergence(p, out.z);

    std::vector<std::array<double, 2>> velocity(n, {0.0, 0.0});
    std::vector<std::array<double, 2>> grad;

    for (std::size_t iter = 0; iter < config.tsne_iterations; ++iter) {
        const double p_scale =
            iter < config.tsne_exaggeration_iters ? config.tsne_early_exaggeration : 1.0;
        const double momentum = iter < config.tsne_momentum_switch_iter
                                    ? config.tsne_momentum_early
                                    : config.tsne_momentum_late;
        gradient_into(p, out.z, p_scale, grad);

        double mean_x = 0.0, mean_y = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            velocity[i][0] = momentum * velocity[i][0] - config.tsne_learning_rate * grad[i][0];
            velocity[i][1] = momentum * velocity[i][1] - config.tsne_learning_rate * grad[i][1];
            out.z[i][0] += velocity[i][0];
            out.z[i][1] += velocity[i][1];
            mean_x += out.z[i][0];
            mean_y += out.z[i][1];
        }
        // Recenter; the objective is translation-invariant and this keeps
        // coordinates from drifting.
        mean_x /= static_cast<double>(n);
        mean_y /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.z[i][0] -= mean_x;
            out.z[i][1] -= mean_y;
            if (!std::isfinite(out.z[i][0]) || !std::isfinite(out.z[i][1])) {
                throw Error(ErrorKind::NumericalDivergence, kModule,
                            "non-finite coordinate at iteration " + std::to_string(iter));
            }
        }
        out.iterations_run = iter + 1;
    }

    out.kl_final = kl_divergence(p, out.z);
    return out;
}

}  // namespace roifc
