#ifndef JETFIT_JET_HPP
#define JETFIT_JET_HPP

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <vector>

#include "jetfit/geom.hpp"

namespace jetfit {

/// Coefficients of a degree-n bivariate polynomial in monomial order
/// (1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3, ...): ascending total
/// degree, and within a degree ascending power of y.
struct JetCoefficients {
    int order_n = 1;
    Eigen::VectorXd coeffs;

    /// Number of coefficients of a degree-n jet: (n+1)(n+2)/2.
    static int count(int order_n) { return (order_n + 1) * (order_n + 2) / 2; }
    /// Flat index of the x^i y^j term.
    static int index(int i, int j) {
        const int k = i + j;
        return k * (k + 1) / 2 + j;
    }
    /// Total degree of the term at a flat index.
    static int degree_of(int index);

    double beta(int i, int j) const { return coeffs[index(i, j)]; }
    double evaluate(double x, double y) const;
};

/// Nonnegative per-point weights: the diagonal of W.
struct WeightVector {
    Eigen::VectorXd w;

    int size() const { return static_cast<int>(w.size()); }
};

/// N_p x N_n matrix of monomial evaluations (the Vandermonde matrix of the
/// jet least-squares problem).
struct DesignMatrix {
    Eigen::MatrixXd m;

    int rows() const { return static_cast<int>(m.rows()); }
    int cols() const { return static_cast<int>(m.cols()); }
};

/// Result of a weighted jet fit. Coefficients live in the original (not
/// preconditioned) patch coordinates; the solver factorization is kept so
/// weight derivatives can reuse it.
struct JetFit {
    JetCoefficients coefficients;
    UnitVector3 normal;
    Eigen::VectorXd residuals;  // z_i - J(x_i, y_i), original units
    WeightVector weights_used;
    double condition_estimate = 1.0;
    double precondition_h = 1.0;
    bool ill_conditioned = false;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;  // of sqrt(W) * M', preconditioned
};

struct FlatnessDiagnostic {
    double d_max = 0.0;  // diameter of the projected convex hull
    double d_min = 0.0;  // largest inscribed disk diameter
    double ratio = std::numeric_limits<double>::infinity();
    bool degenerate = false;  // projected points collinear
};

DesignMatrix vandermonde(const std::vector<Eigen::Vector2d>& xy, int order_n);

/// Solves the weighted least-squares jet fit min sum_i w_i (J(x_i,y_i) - z_i)^2
/// via QR of the sqrt(w)-scaled system. Coordinates are preconditioned by
/// 1/scale_h internally; returned coefficients are in original units.
/// Throws RankDeficientError; a condition estimate above `condition_cap`
/// only sets the ill_conditioned warning flag.
JetFit fit_jet(const PatchNeighborhood& patch, const WeightVector& weights, int order_n,
               double condition_cap = 1e12);

/// Surface normal of a jet: (-b10, -b01, 1) normalized. Always has z > 0.
UnitVector3 normal_from_jet(const JetCoefficients& c);

WeightVector uniform_weights(int n_p);

/// w_i = exp(-d_i^2 / bandwidth^2) with d_i the local point norm. Without an
/// explicit bandwidth the median of the nonzero distances is used.
WeightVector gaussian_weights(const PatchNeighborhood& patch,
                              std::optional<double> bandwidth = std::nullopt);

/// Iteratively reweighted fit with the Welsch kernel
/// w_i = exp(-(r_i / (c*s))^2), s = 1.4826 * median|r_i| from the previous
/// iteration. Starts from uniform weights; a vanishing residual scale
/// (perfect fit) returns the current fit immediately.
JetFit irls_refit(const PatchNeighborhood& patch, int order_n, int max_iters = 10,
                  double tuning_c = 2.0);

/// Hull-diameter over largest-inscribed-disk-diameter of the projected
/// (x, y) sample. Collinear projections are flagged degenerate with an
/// infinite ratio.
FlatnessDiagnostic flatness_ratio(const PatchNeighborhood& patch);

/// Weighting schemes selectable by callers that fit whole patches.
enum class WeightScheme { uniform, gaussian, irls };

/// Fits `patch` under the given scheme (irls dispatches to irls_refit).
JetFit fit_with_scheme(const PatchNeighborhood& patch, int order_n, WeightScheme scheme);

}  // namespace jetfit

#endif
