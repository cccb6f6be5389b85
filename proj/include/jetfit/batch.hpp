#ifndef JETFIT_BATCH_HPP
#define JETFIT_BATCH_HPP

#include <cstdint>
#include <vector>

#include "jetfit/align.hpp"
#include "jetfit/geom.hpp"
#include "jetfit/jet.hpp"

namespace jetfit {

enum class AlignMode { none, pca, z_iterate };

struct EstimateOptions {
    int k = 256;
    int order_n = 3;
    WeightScheme weights = WeightScheme::uniform;
    AlignMode align = AlignMode::z_iterate;
    double tol_deg = 0.5;
    int max_align_iters = 5;
};

struct CloudEstimate {
    std::vector<UnitVector3> normals;        // one per input point, input order
    std::vector<std::uint8_t> fell_back;     // 1 where the fit failed and PCA was used
    int failures() const;
};

/// One normal per cloud point. Every point is independent, so the parallel
/// kernel and the serial reference produce bit-identical output.
CloudEstimate estimate_cloud(const PointCloud& cloud, const EstimateOptions& opts,
                             bool parallel = true);

/// Serial reference implementation.
CloudEstimate estimate_cloud_serial(const PointCloud& cloud, const EstimateOptions& opts);

/// OpenMP kernel.
CloudEstimate estimate_cloud_parallel(const PointCloud& cloud, const EstimateOptions& opts);

}  // namespace jetfit

#endif
