// Independent reference implementations used only by tests. Everything here
// is deliberately brute force and shares no code path with the library.
#ifndef JETFIT_TEST_ORACLES_HPP
#define JETFIT_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "jetfit/geom.hpp"
#include "jetfit/jet.hpp"

namespace oracles {

/// O(N^2) k-nearest-neighbors by sorting the full distance list, ties by
/// ascending index.
inline std::vector<int> brute_knn(const std::vector<jetfit::Vec3>& points,
                                  const jetfit::Vec3& query, int k) {
    std::vector<std::pair<double, int>> dist;
    dist.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        dist.emplace_back((points[i] - query).squaredNorm(), static_cast<int>(i));
    }
    std::sort(dist.begin(), dist.end());
    std::vector<int> out;
    for (int i = 0; i < k; ++i) out.push_back(dist[i].second);
    return out;
}

/// Weighted fit objective evaluated directly from the definition.
inline double fit_objective(const jetfit::PatchNeighborhood& patch,
                            const Eigen::VectorXd& weights,
                            const jetfit::JetCoefficients& coeffs) {
    double sum = 0.0;
    for (int i = 0; i < patch.size(); ++i) {
        const jetfit::Vec3& p = patch.local_points[i];
        const double r = coeffs.evaluate(p.x(), p.y()) - p.z();
        sum += weights[i] * r * r;
    }
    return sum;
}

/// True when no candidate on a grid_steps^3 grid around `center` (plane fit,
/// 3 coefficients) beats the center objective.
inline bool grid_search_confirms_minimum(const jetfit::PatchNeighborhood& patch,
                                         const Eigen::VectorXd& weights,
                                         const jetfit::JetCoefficients& center, double span,
                                         int grid_steps, double slack = 1e-12) {
    const double best = fit_objective(patch, weights, center);
    jetfit::JetCoefficients cand = center;
    for (int a = 0; a < grid_steps; ++a) {
        for (int b = 0; b < grid_steps; ++b) {
            for (int c = 0; c < grid_steps; ++c) {
                const double fa = -span + 2.0 * span * a / (grid_steps - 1);
                const double fb = -span + 2.0 * span * b / (grid_steps - 1);
                const double fc = -span + 2.0 * span * c / (grid_steps - 1);
                cand.coeffs[0] = center.coeffs[0] + fa;
                cand.coeffs[1] = center.coeffs[1] + fb;
                cand.coeffs[2] = center.coeffs[2] + fc;
                if (fit_objective(patch, weights, cand) < best - slack) return false;
            }
        }
    }
    return true;
}

/// Hull diameter as the exhaustive max pairwise distance of the projection.
inline double brute_diameter_xy(const jetfit::PatchNeighborhood& patch) {
    double d = 0.0;
    for (int i = 0; i < patch.size(); ++i) {
        for (int j = i + 1; j < patch.size(); ++j) {
            const Eigen::Vector2d a(patch.local_points[i].x(), patch.local_points[i].y());
            const Eigen::Vector2d b(patch.local_points[j].x(), patch.local_points[j].y());
            d = std::max(d, (a - b).norm());
        }
    }
    return d;
}

/// Largest inscribed disk diameter of the projected hull by dense grid
/// search with one local refinement pass. Points strictly inside the hull
/// score the minimum distance to any hull edge.
double brute_inscribed_diameter_xy(const jetfit::PatchNeighborhood& patch);

/// Uniformly random unit vector.
inline jetfit::UnitVector3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (true) {
        const jetfit::Vec3 v(gauss(rng), gauss(rng), gauss(rng));
        if (v.norm() > 1e-6) return jetfit::UnitVector3(v);
    }
}

/// Random patch: n_p points uniform in a disk of radius h lifted by a random
/// low-degree polynomial plus optional z-noise; query at the origin.
jetfit::PatchNeighborhood random_patch(std::mt19937_64& rng, int n_p, double h,
                                       double noise_sigma);

}  // namespace oracles

#endif
