#include "jetfit/jet.hpp"

#include <algorithm>
#include <cmath>

namespace jetfit {

int JetCoefficients::degree_of(int index) {
    int k = 0;
    while ((k + 1) * (k + 2) / 2 <= index) ++k;
    return k;
}

double JetCoefficients::evaluate(double x, double y) const {
    std::vector<double> xp(order_n + 1, 1.0), yp(order_n + 1, 1.0);
    for (int k = 1; k <= order_n; ++k) {
        xp[k] = xp[k - 1] * x;
        yp[k] = yp[k - 1] * y;
    }
    double sum = 0.0;
    int idx = 0;
    for (int k = 0; k <= order_n; ++k) {
        for (int j = 0; j <= k; ++j, ++idx) sum += coeffs[idx] * xp[k - j] * yp[j];
    }
    return sum;
}

DesignMatrix vandermonde(const std::vector<Eigen::Vector2d>& xy, int order_n) {
    if (order_n < 1) throw Error("vandermonde: order_n must be >= 1");
    const int n_p = static_cast<int>(xy.size());
    const int n_n = JetCoefficients::count(order_n);
    DesignMatrix out;
    out.m.resize(n_p, n_n);
    for (int i = 0; i < n_p; ++i) {
        const double x = xy[i].x(), y = xy[i].y();
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw Error("vandermonde: non-finite coordinate");
        }
        std::vector<double> xp(order_n + 1, 1.0), yp(order_n + 1, 1.0);
        for (int k = 1; k <= order_n; ++k) {
            xp[k] = xp[k - 1] * x;
            yp[k] = yp[k - 1] * y;
        }
        int idx = 0;
        for (int k = 0; k <= order_n; ++k) {
            for (int j = 0; j <= k; ++j, ++idx) out.m(i, idx) = xp[k - j] * yp[j];
        }
    }
    return out;
}

static void validate_weights(const WeightVector& weights, int n_p, int n_n) {
    if (weights.size() != n_p) throw Error("fit_jet: weight count does not match patch size");
    int positive = 0;
    for (int i = 0; i < n_p; ++i) {
        const double wi = weights.w[i];
        if (!std::isfinite(wi) || wi < 0.0) throw Error("fit_jet: weights must be finite and >= 0");
        if (wi > 0.0) ++positive;
    }
    if (positive < n_n) {
        throw RankDeficientError("fit_jet: fewer strictly positive weights than coefficients");
    }
}

JetFit fit_jet(const PatchNeighborhood& patch, const WeightVector& weights, int order_n,
               double condition_cap) {
    const int n_p = patch.size();
    const int n_n = JetCoefficients::count(order_n);
    if (order_n < 1) throw Error("fit_jet: order_n must be >= 1");
    if (n_p < n_n) throw Error("fit_jet: patch has fewer points than coefficients");
    validate_weights(weights, n_p, n_n);

    const double h = patch.scale_h;
    std::vector<Eigen::Vector2d> xy(n_p);
    Eigen::VectorXd z(n_p);
    for (int i = 0; i < n_p; ++i) {
        xy[i] = Eigen::Vector2d(patch.local_points[i].x() / h, patch.local_points[i].y() / h);
        z[i] = patch.local_points[i].z() / h;
    }
    const DesignMatrix design = vandermonde(xy, order_n);

    Eigen::VectorXd sqrt_w = weights.w.cwiseSqrt();
    Eigen::MatrixXd a = sqrt_w.asDiagonal() * design.m;
    Eigen::VectorXd b = sqrt_w.cwiseProduct(z);

    JetFit fit;
    fit.qr.compute(a);
    if (fit.qr.rank() < n_n) {
        throw RankDeficientError("fit_jet: weighted system rank below coefficient count");
    }
    const Eigen::VectorXd alpha_pre = fit.qr.solve(b);

    // Condition estimate from the extreme diagonal entries of R (column
    // pivoting keeps them non-increasing in magnitude).
    const auto r_diag = fit.qr.matrixR().diagonal().head(n_n);
    const double d_max = std::abs(r_diag(0));
    const double d_min = std::abs(r_diag(n_n - 1));
    fit.condition_estimate = d_min > 0.0 ? d_max / d_min : std::numeric_limits<double>::infinity();
    fit.ill_conditioned = fit.condition_estimate > condition_cap;

    // Map coefficients back to original units: degree-k terms scale by h^(1-k).
    fit.coefficients.order_n = order_n;
    fit.coefficients.coeffs.resize(n_n);
    for (int idx = 0; idx < n_n; ++idx) {
        const int k = JetCoefficients::degree_of(idx);
        fit.coefficients.coeffs[idx] = alpha_pre[idx] * std::pow(h, 1 - k);
    }

    fit.residuals = h * (z - design.m * alpha_pre);
    fit.normal = normal_from_jet(fit.coefficients);
    fit.weights_used = weights;
    fit.precondition_h = h;
    return fit;
}

UnitVector3 normal_from_jet(const JetCoefficients& c) {
    const double b10 = c.beta(1, 0);
    const double b01 = c.beta(0, 1);
    const double denom = std::sqrt(b10 * b10 + b01 * b01 + 1.0);
    return UnitVector3(Vec3(-b10 / denom, -b01 / denom, 1.0 / denom));
}

WeightVector uniform_weights(int n_p) {
    if (n_p < 1) throw Error("uniform_weights: n_p must be >= 1");
    return WeightVector{Eigen::VectorXd::Ones(n_p)};
}

static double median_of(std::vector<double> values) {
    const std::size_t n = values.size();
    std::sort(values.begin(), values.end());
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

WeightVector gaussian_weights(const PatchNeighborhood& patch, std::optional<double> bandwidth) {
    const int n_p = patch.size();
    double bw;
    if (bandwidth) {
        if (*bandwidth <= 0.0) throw Error("gaussian_weights: bandwidth must be > 0");
        bw = *bandwidth;
    } else {
        std::vector<double> dists;
        dists.reserve(n_p);
        for (const Vec3& p : patch.local_points) {
            const double d = p.norm();
            if (d > 0.0) dists.push_back(d);
        }
        bw = dists.empty() ? 1.0 : median_of(std::move(dists));
    }
    WeightVector out{Eigen::VectorXd(n_p)};
    for (int i = 0; i < n_p; ++i) {
        const double d = patch.local_points[i].norm();
        out.w[i] = std::exp(-(d * d) / (bw * bw));
    }
    return out;
}

JetFit irls_refit(const PatchNeighborhood& patch, int order_n, int max_iters, double tuning_c) {
    if (max_iters < 1) throw Error("irls_refit: max_iters must be >= 1");
    if (tuning_c <= 0.0) throw Error("irls_refit: tuning_c must be > 0");

    JetFit fit = fit_jet(patch, uniform_weights(patch.size()), order_n);
    for (int iter = 0; iter < max_iters; ++iter) {
        std::vector<double> abs_r(fit.residuals.size());
        for (int i = 0; i < fit.residuals.size(); ++i) abs_r[i] = std::abs(fit.residuals[i]);
        const double mad = median_of(std::move(abs_r));
        if (mad < 1e-14) return fit;  // perfect fit; residual scale degenerate

        const double scale = 1.4826 * mad;
        WeightVector w{Eigen::VectorXd(fit.residuals.size())};
        for (int i = 0; i < fit.residuals.size(); ++i) {
            const double t = fit.residuals[i] / (tuning_c * scale);
            w.w[i] = std::exp(-t * t);
        }
        JetFit next = fit_jet(patch, w, order_n);
        const double denom = std::max(1.0, fit.coefficients.coeffs.cwiseAbs().maxCoeff());
        const double change =
            (next.coefficients.coeffs - fit.coefficients.coeffs).cwiseAbs().maxCoeff() / denom;
        fit = std::move(next);
        if (change < 1e-8) break;
    }
    return fit;
}

JetFit fit_with_scheme(const PatchNeighborhood& patch, int order_n, WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::uniform:
            return fit_jet(patch, uniform_weights(patch.size()), order_n);
        case WeightScheme::gaussian:
            return fit_jet(patch, gaussian_weights(patch), order_n);
        case WeightScheme::irls:
            return irls_refit(patch, order_n);
    }
    throw Error("fit_with_scheme: unknown scheme");
}

// ---------------------------------------------------------------------------
// Flatness diagnostic

namespace {

// Counterclockwise convex hull (monotone chain); collinear points dropped.
std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
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

// Keeps the part of a convex polygon with signed_dist(p) >= 0.
std::vector<Eigen::Vector2d> clip_halfplane(const std::vector<Eigen::Vector2d>& poly,
                                            const Eigen::Vector2d& normal, double offset) {
    std::vector<Eigen::Vector2d> out;
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[(i + 1) % n];
        const double da = normal.dot(a) - offset;
        const double db = normal.dot(b) - offset;
        if (da >= 0) out.push_back(a);
        if ((da > 0 && db < 0) || (da < 0 && db > 0)) {
            out.push_back(a + (da / (da - db)) * (b - a));
        }
    }
    return out;
}

// Chebyshev radius of a CCW convex polygon: largest r whose inward offset
// polygon stays nonempty, located by bisection with exact half-plane clips.
double chebyshev_radius(const std::vector<Eigen::Vector2d>& hull) {
    const int n = static_cast<int>(hull.size());
    std::vector<Eigen::Vector2d> normals(n);
    std::vector<double> offsets(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d e = hull[(i + 1) % n] - hull[i];
        const Eigen::Vector2d inward = Eigen::Vector2d(-e.y(), e.x()).normalized();
        normals[i] = inward;
        offsets[i] = inward.dot(hull[i]);
    }
    auto feasible = [&](double r) {
        std::vector<Eigen::Vector2d> poly = hull;
        for (int i = 0; i < n && !poly.empty(); ++i) {
            poly = clip_halfplane(poly, normals[i], offsets[i] + r);
        }
        return !poly.empty();
    };
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) hi = std::max(hi, (hull[i] - hull[j]).norm());
    }
    hi *= 0.5;
    for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

FlatnessDiagnostic flatness_ratio(const PatchNeighborhood& patch) {
    if (patch.size() < 3) throw Error("flatness_ratio: need at least 3 points");
    std::vector<Eigen::Vector2d> xy;
    xy.reserve(patch.local_points.size());
    for (const Vec3& p : patch.local_points) xy.emplace_back(p.x(), p.y());

    FlatnessDiagnostic diag;
    for (std::size_t i = 0; i < xy.size(); ++i) {
        for (std::size_t j = i + 1; j < xy.size(); ++j) {
            diag.d_max = std::max(diag.d_max, (xy[i] - xy[j]).norm());
        }
    }
    const std::vector<Eigen::Vector2d> hull = convex_hull(std::move(xy));
    if (hull.size() < 3) {
        diag.degenerate = true;
        diag.d_min = 0.0;
        diag.ratio = std::numeric_limits<double>::infinity();
        return diag;
    }
    diag.d_min = 2.0 * chebyshev_radius(hull);
    diag.ratio = diag.d_min > 0.0 ? diag.d_max / diag.d_min
                                  : std::numeric_limits<double>::infinity();
    diag.degenerate = diag.d_min == 0.0;
    return diag;
}

}  // namespace jetfit
