#ifndef JETFIT_SURFACES_HPP
#define JETFIT_SURFACES_HPP

#include <cstdint>
#include <utility>

#include "jetfit/geom.hpp"
#include "jetfit/jet.hpp"

namespace jetfit::lab {

enum class SurfaceKind { plane, sphere, monge_poly, monge_trig };

/// An analytic surface expressed as a height function g(u, v) in a frame
/// centered on its query point (g(0,0) = 0), with exact normals and exact
/// Taylor coefficients available there.
class AnalyticSurface {
public:
    /// z = a*x + b*y through the query point.
    static AnalyticSurface plane(double a, double b);
    /// Sphere of the given radius, query point at the pole (height
    /// function valid for u^2 + v^2 < radius^2).
    static AnalyticSurface sphere(double radius);
    /// Polynomial height function; the coefficients are also the exact
    /// Taylor expansion at the query point.
    static AnalyticSurface monge_poly(JetCoefficients coeffs);
    /// z = amp * sin(fx * x) * cos(fy * y), queried at (x0, y0). Taylor
    /// coefficients of every order exist in closed form.
    static AnalyticSurface monge_trig(double amp, double fx, double fy, double x0, double y0);

    SurfaceKind kind() const { return kind_; }

    double height(double u, double v) const;
    Eigen::Vector2d gradient(double u, double v) const;
    /// Height-convention unit normal (-gu, -gv, 1)/norm; positive z.
    UnitVector3 normal_at(double u, double v) const;
    UnitVector3 query_normal() const { return normal_at(0.0, 0.0); }

    /// Exact Taylor coefficients of g about the query point up to the given
    /// total degree (trig and sphere kinds support degree <= 6).
    JetCoefficients taylor(int order) const;

    /// True when a degree-n jet reproduces the surface exactly.
    bool exactly_representable(int order_n) const;

private:
    AnalyticSurface() = default;

    SurfaceKind kind_ = SurfaceKind::plane;
    double a_ = 0.0, b_ = 0.0;                      // plane
    double radius_ = 1.0;                           // sphere
    JetCoefficients poly_;                          // monge_poly
    double amp_ = 1.0, fx_ = 1.0, fy_ = 1.0;        // monge_trig
    double x0_ = 0.0, y0_ = 0.0;
};

enum class DensityPattern { uniform, gradient, striped };

/// Sampling recipe for one synthetic patch.
struct SampleSpec {
    double h = 0.5;               // patch radius in the parameter plane
    int n_points = 64;            // total points including the query
    double noise_sigma_rel = 0.0; // Gaussian sigma / bbox diagonal, along z
    DensityPattern density = DensityPattern::uniform;
    double tilt_deg = 0.0;        // rigid rotation about a seeded random axis
    std::uint64_t seed = 0;
};

struct SampledPatch {
    PatchNeighborhood patch;
    UnitVector3 gt_normal;  // analytic normal at the query, tilted identically
};

/// Draws a patch around the surface's query point: parameter-plane samples
/// by the requested density, lifted to the surface, z-noise added, centered
/// at the (noisy) query, then rigidly tilted. Deterministic in (spec.seed).
SampledPatch sample_patch(const AnalyticSurface& surface, const SampleSpec& spec);

}  // namespace jetfit::lab

#endif
