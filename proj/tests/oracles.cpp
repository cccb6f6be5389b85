#include "oracles.hpp"

namespace oracles {

namespace {

// Strictly-convex-hull vertices of the projection (monotone chain).
std::vector<Eigen::Vector2d> hull_of(const jetfit::PatchNeighborhood& patch) {
    std::vector<Eigen::Vector2d> pts;
    for (const jetfit::Vec3& p : patch.local_points) pts.emplace_back(p.x(), p.y());
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        return a.y() < b.y();
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) { return a == b; }),
              pts.end());
    const int n = static_cast<int>(pts.size());
    if (n < 3) return pts;
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> hull(2 * n);
    int m = 0;
    for (int i = 0; i < n; ++i) {
        while (m >= 2 && cross(hull[m - 2], hull[m - 1], pts[i]) <= 0) --m;
        hull[m++] = pts[i];
    }
    const int lower = m + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (m >= lower && cross(hull[m - 2], hull[m - 1], pts[i]) <= 0) --m;
        hull[m++] = pts[i];
    }
    hull.resize(m - 1);
    return hull;
}

double clearance(const std::vector<Eigen::Vector2d>& hull, const Eigen::Vector2d& p) {
    // Signed distance to the hull boundary: min over edges of the inward
    // distance; negative outside.
    double best = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(hull.size());
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d e = hull[(i + 1) % n] - hull[i];
        const Eigen::Vector2d inward(-e.y(), e.x());
        best = std::min(best, inward.normalized().dot(p - hull[i]));
    }
    return best;
}

}  // namespace

double brute_inscribed_diameter_xy(const jetfit::PatchNeighborhood& patch) {
    const std::vector<Eigen::Vector2d> hull = hull_of(patch);
    if (hull.size() < 3) return 0.0;

    Eigen::Vector2d lo = hull[0], hi = hull[0];
    for (const auto& p : hull) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }

    auto scan = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b, int steps) {
        double best = 0.0;
        Eigen::Vector2d best_at = 0.5 * (a + b);
        for (int ix = 0; ix <= steps; ++ix) {
            for (int iy = 0; iy <= steps; ++iy) {
                const Eigen::Vector2d p(a.x() + (b.x() - a.x()) * ix / steps,
                                        a.y() + (b.y() - a.y()) * iy / steps);
                const double c = clearance(hull, p);
                if (c > best) {
                    best = c;
                    best_at = p;
                }
            }
        }
        return std::make_pair(best, best_at);
    };

    auto [radius, center] = scan(lo, hi, 400);
    // One refinement pass around the coarse winner.
    const Eigen::Vector2d cell = (hi - lo) / 400.0;
    auto [fine_radius, fine_center] = scan(center - 2.0 * cell, center + 2.0 * cell, 200);
    return 2.0 * std::max(radius, fine_radius);
}

jetfit::PatchNeighborhood random_patch(std::mt19937_64& rng, int n_p, double h,
                                       double noise_sigma) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);

    // Random quadratic height function.
    const double c10 = coeff(rng), c01 = coeff(rng);
    const double c20 = coeff(rng), c11 = coeff(rng), c02 = coeff(rng);

    jetfit::PatchNeighborhood patch;
    patch.query_index = 0;
    patch.neighbor_indices.resize(n_p);
    patch.local_points.resize(n_p);
    double max_norm = 0.0;
    for (int i = 0; i < n_p; ++i) {
        patch.neighbor_indices[i] = i;
        double x = 0.0, y = 0.0;
        if (i > 0) {
            const double r = h * std::sqrt(unit(rng));
            const double th = 2.0 * M_PI * unit(rng);
            x = r * std::cos(th);
            y = r * std::sin(th);
        }
        double z = c10 * x + c01 * y + c20 * x * x + c11 * x * y + c02 * y * y;
        if (noise_sigma > 0.0) z += noise_sigma * gauss(rng);
        if (i == 0) z = 0.0;
        patch.local_points[i] = jetfit::Vec3(x, y, z);
        max_norm = std::max(max_norm, patch.local_points[i].norm());
    }
    patch.scale_h = max_norm > 0.0 ? max_norm : 1.0;
    return patch;
}

}  // namespace oracles
