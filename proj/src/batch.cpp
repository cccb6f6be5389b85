#include "jetfit/batch.hpp"

#include <numeric>

namespace jetfit {

int CloudEstimate::failures() const {
    return static_cast<int>(std::accumulate(fell_back.begin(), fell_back.end(), 0));
}

namespace {

UnitVector3 estimate_one(const KdTree& tree, const PointCloud& cloud, int index,
                         const EstimateOptions& opts, std::uint8_t& fell_back) {
    fell_back = 0;
    PatchNeighborhood patch;
    try {
        patch = knn_patch(tree, cloud, index, opts.k);
        switch (opts.align) {
            case AlignMode::none:
                return fit_with_scheme(patch, opts.order_n, opts.weights).normal;
            case AlignMode::pca: {
                const Rotation frame = pca_align(patch);
                const JetFit fit =
                    fit_with_scheme(apply_rotation(frame, patch), opts.order_n, opts.weights);
                return frame.inverse().apply(fit.normal);
            }
            case AlignMode::z_iterate:
                return world_normal(z_align_iterate(patch, opts.weights, opts.order_n,
                                                    opts.tol_deg, opts.max_align_iters));
        }
        throw Error("estimate_one: unknown align mode");
    } catch (const Error&) {
        fell_back = 1;
        try {
            return pca_normal(patch);
        } catch (const Error&) {
            return UnitVector3(0.0, 0.0, 1.0);  // degenerate patch, arbitrary up
        }
    }
}

void validate(const PointCloud& cloud, const EstimateOptions& opts) {
    if (cloud.points.empty()) throw Error("estimate_cloud: empty cloud");
    if (opts.k < 3) throw Error("estimate_cloud: k must be >= 3");
    if (opts.k > static_cast<int>(cloud.size())) {
        throw Error("estimate_cloud: k exceeds cloud size");
    }
    if (opts.order_n < 1) throw Error("estimate_cloud: order_n must be >= 1");
}

}  // namespace

CloudEstimate estimate_cloud_serial(const PointCloud& cloud, const EstimateOptions& opts) {
    validate(cloud, opts);
    const KdTree tree(cloud.points);
    const int n = static_cast<int>(cloud.size());
    CloudEstimate out;
    out.normals.resize(n);
    out.fell_back.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        out.normals[i] = estimate_one(tree, cloud, i, opts, out.fell_back[i]);
    }
    return out;
}

CloudEstimate estimate_cloud_parallel(const PointCloud& cloud, const EstimateOptions& opts) {
    validate(cloud, opts);
    const KdTree tree(cloud.points);
    const int n = static_cast<int>(cloud.size());
    CloudEstimate out;
    out.normals.resize(n);
    out.fell_back.assign(n, 0);
#pragma omp parallel for schedule(dynamic, 32)
    for (int i = 0; i < n; ++i) {
        out.normals[i] = estimate_one(tree, cloud, i, opts, out.fell_back[i]);
    }
    return out;
}

CloudEstimate estimate_cloud(const PointCloud& cloud, const EstimateOptions& opts, bool parallel) {
    return parallel ? estimate_cloud_parallel(cloud, opts) : estimate_cloud_serial(cloud, opts);
}

}  // namespace jetfit
