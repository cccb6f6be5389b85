#include "jetfit/surfaces.hpp"

#include <cmath>
#include <random>

namespace jetfit::lab {

AnalyticSurface AnalyticSurface::plane(double a, double b) {
    AnalyticSurface s;
    s.kind_ = SurfaceKind::plane;
    s.a_ = a;
    s.b_ = b;
    return s;
}

AnalyticSurface AnalyticSurface::sphere(double radius) {
    if (radius <= 0.0) throw Error("AnalyticSurface::sphere: radius must be > 0");
    AnalyticSurface s;
    s.kind_ = SurfaceKind::sphere;
    s.radius_ = radius;
    return s;
}

AnalyticSurface AnalyticSurface::monge_poly(JetCoefficients coeffs) {
    if (coeffs.coeffs.size() != JetCoefficients::count(coeffs.order_n)) {
        throw Error("AnalyticSurface::monge_poly: coefficient count mismatch");
    }
    AnalyticSurface s;
    s.kind_ = SurfaceKind::monge_poly;
    s.poly_ = std::move(coeffs);
    s.poly_.coeffs[0] = 0.0;  // query point sits on the surface
    return s;
}

AnalyticSurface AnalyticSurface::monge_trig(double amp, double fx, double fy, double x0,
                                            double y0) {
    AnalyticSurface s;
    s.kind_ = SurfaceKind::monge_trig;
    s.amp_ = amp;
    s.fx_ = fx;
    s.fy_ = fy;
    s.x0_ = x0;
    s.y0_ = y0;
    return s;
}

double AnalyticSurface::height(double u, double v) const {
    switch (kind_) {
        case SurfaceKind::plane:
            return a_ * u + b_ * v;
        case SurfaceKind::sphere: {
            const double r2 = u * u + v * v;
            if (r2 >= radius_ * radius_) {
                throw Error("AnalyticSurface: sample outside sphere chart");
            }
            return radius_ - std::sqrt(radius_ * radius_ - r2);
        }
        case SurfaceKind::monge_poly:
            return poly_.evaluate(u, v);
        case SurfaceKind::monge_trig:
            return amp_ * (std::sin(fx_ * (x0_ + u)) * std::cos(fy_ * (y0_ + v)) -
                           std::sin(fx_ * x0_) * std::cos(fy_ * y0_));
    }
    throw Error("AnalyticSurface: unknown kind");
}

Eigen::Vector2d AnalyticSurface::gradient(double u, double v) const {
    switch (kind_) {
        case SurfaceKind::plane:
            return {a_, b_};
        case SurfaceKind::sphere: {
            const double s = std::sqrt(radius_ * radius_ - u * u - v * v);
            return {u / s, v / s};
        }
        case SurfaceKind::monge_poly: {
            double gu = 0.0, gv = 0.0;
            int idx = 0;
            for (int k = 0; k <= poly_.order_n; ++k) {
                for (int j = 0; j <= k; ++j, ++idx) {
                    const int i = k - j;
                    const double c = poly_.coeffs[idx];
                    if (i > 0) gu += c * i * std::pow(u, i - 1) * std::pow(v, j);
                    if (j > 0) gv += c * j * std::pow(u, i) * std::pow(v, j - 1);
                }
            }
            return {gu, gv};
        }
        case SurfaceKind::monge_trig:
            return {amp_ * fx_ * std::cos(fx_ * (x0_ + u)) * std::cos(fy_ * (y0_ + v)),
                    -amp_ * fy_ * std::sin(fx_ * (x0_ + u)) * std::sin(fy_ * (y0_ + v))};
    }
    throw Error("AnalyticSurface: unknown kind");
}

UnitVector3 AnalyticSurface::normal_at(double u, double v) const {
    const Eigen::Vector2d g = gradient(u, v);
    return UnitVector3(Vec3(-g.x(), -g.y(), 1.0));
}

JetCoefficients AnalyticSurface::taylor(int order) const {
    if (order < 1) throw Error("AnalyticSurface::taylor: order must be >= 1");
    JetCoefficients out;
    out.order_n = order;
    out.coeffs = Eigen::VectorXd::Zero(JetCoefficients::count(order));

    switch (kind_) {
        case SurfaceKind::plane:
            out.coeffs[JetCoefficients::index(1, 0)] = a_;
            out.coeffs[JetCoefficients::index(0, 1)] = b_;
            return out;
        case SurfaceKind::sphere: {
            // R - sqrt(R^2 - r^2) = r^2/(2R) + r^4/(8R^3) + r^6/(16R^5) + ...
            // with r^2 = u^2 + v^2; expand the radial powers binomially.
            if (order > 6) throw Error("AnalyticSurface::taylor: sphere supports order <= 6");
            const double r = radius_;
            const double c2 = 1.0 / (2.0 * r);
            const double c4 = 1.0 / (8.0 * r * r * r);
            const double c6 = 1.0 / (16.0 * r * r * r * r * r);
            auto set = [&](int i, int j, double value) {
                if (i + j <= order) out.coeffs[JetCoefficients::index(i, j)] = value;
            };
            set(2, 0, c2);
            set(0, 2, c2);
            set(4, 0, c4);
            set(2, 2, 2.0 * c4);
            set(0, 4, c4);
            set(6, 0, c6);
            set(4, 2, 3.0 * c6);
            set(2, 4, 3.0 * c6);
            set(0, 6, c6);
            return out;
        }
        case SurfaceKind::monge_poly: {
            const int copy_order = std::min(order, poly_.order_n);
            for (int idx = 0; idx < JetCoefficients::count(copy_order); ++idx) {
                out.coeffs[idx] = poly_.coeffs[idx];
            }
            return out;
        }
        case SurfaceKind::monge_trig: {
            // d^i/dx^i sin(fx*x) = fx^i sin(fx*x + i*pi/2), likewise for cos.
            double factorial[13];
            factorial[0] = 1.0;
            for (int k = 1; k <= 12; ++k) factorial[k] = factorial[k - 1] * k;
            for (int k = 1; k <= order; ++k) {
                for (int j = 0; j <= k; ++j) {
                    const int i = k - j;
                    const double di = std::pow(fx_, i) * std::sin(fx_ * x0_ + i * M_PI / 2.0);
                    const double dj = std::pow(fy_, j) * std::cos(fy_ * y0_ + j * M_PI / 2.0);
                    out.coeffs[JetCoefficients::index(i, j)] =
                        amp_ * di * dj / (factorial[i] * factorial[j]);
                }
            }
            return out;
        }
    }
    throw Error("AnalyticSurface: unknown kind");
}

bool AnalyticSurface::exactly_representable(int order_n) const {
    switch (kind_) {
        case SurfaceKind::plane:
            return order_n >= 1;
        case SurfaceKind::monge_poly:
            return order_n >= poly_.order_n;
        default:
            return false;
    }
}

// ---------------------------------------------------------------------------
// Sampler

namespace {

bool in_stripe(double u, double h) {
    // Stripes of width h/5 with period 2h/5 along x, phase anchored at -h.
    const double period = 2.0 * h / 5.0;
    const double t = std::fmod(u + h, period);
    return t < h / 5.0;
}

}  // namespace

SampledPatch sample_patch(const AnalyticSurface& surface, const SampleSpec& spec) {
    if (spec.n_points < 3) throw Error("sample_patch: n_points must be >= 3");
    if (spec.h <= 0.0) throw Error("sample_patch: h must be > 0");
    if (spec.noise_sigma_rel < 0.0) throw Error("sample_patch: noise_sigma_rel must be >= 0");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Parameter-plane samples; slot 0 is the query at the origin.
    std::vector<Eigen::Vector2d> uv;
    uv.reserve(spec.n_points);
    uv.emplace_back(0.0, 0.0);
    const long max_attempts = 100L * spec.n_points;
    long attempts = 0;
    while (static_cast<int>(uv.size()) < spec.n_points) {
        if (++attempts > max_attempts) {
            throw SamplerError("sample_patch: rejection sampling exhausted its budget");
        }
        const double r = spec.h * std::sqrt(unit(rng));
        const double theta = 2.0 * M_PI * unit(rng);
        const Eigen::Vector2d cand(r * std::cos(theta), r * std::sin(theta));
        switch (spec.density) {
            case DensityPattern::uniform:
                break;
            case DensityPattern::gradient: {
                // Linear density falloff along +x.
                const double accept = (1.0 - cand.x() / spec.h) / 2.0;
                if (unit(rng) >= accept) continue;
                break;
            }
            case DensityPattern::striped:
                if (in_stripe(cand.x(), spec.h)) continue;
                break;
        }
        uv.push_back(cand);
    }

    std::vector<Vec3> pts(spec.n_points);
    for (int i = 0; i < spec.n_points; ++i) {
        pts[i] = Vec3(uv[i].x(), uv[i].y(), surface.height(uv[i].x(), uv[i].y()));
    }

    // Noise scale from the clean bounding box.
    if (spec.noise_sigma_rel > 0.0) {
        Vec3 lo = pts[0], hi = pts[0];
        for (const Vec3& p : pts) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        const double sigma = spec.noise_sigma_rel * (hi - lo).norm();
        std::normal_distribution<double> gauss(0.0, sigma);
        for (Vec3& p : pts) p.z() += gauss(rng);
    }

    // Center on the (possibly noisy) query point.
    const Vec3 query = pts[0];
    for (Vec3& p : pts) p -= query;
    pts[0].setZero();

    // Rigid tilt about a random axis in the xy-plane, so that for a surface
    // whose query normal is +z the tilt equals the resulting z-angle.
    const double axis_angle = 2.0 * M_PI * unit(rng);
    const Rotation tilt = Rotation::axis_angle(
        Vec3(std::cos(axis_angle), std::sin(axis_angle), 0.0), spec.tilt_deg * M_PI / 180.0);

    SampledPatch out;
    out.patch.query_index = 0;
    out.patch.neighbor_indices.resize(spec.n_points);
    for (int i = 0; i < spec.n_points; ++i) out.patch.neighbor_indices[i] = i;
    out.patch.local_points.resize(spec.n_points);
    double max_norm = 0.0;
    for (int i = 0; i < spec.n_points; ++i) {
        out.patch.local_points[i] = tilt.apply(pts[i]);
        max_norm = std::max(max_norm, out.patch.local_points[i].norm());
    }
    out.patch.local_points[0].setZero();
    out.patch.scale_h = max_norm > 0.0 ? max_norm : 1.0;
    out.gt_normal = tilt.apply(surface.query_normal());
    return out;
}

}  // namespace jetfit::lab
