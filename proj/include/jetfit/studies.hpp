#ifndef JETFIT_STUDIES_HPP
#define JETFIT_STUDIES_HPP

#include <string>
#include <vector>

#include "jetfit/align.hpp"
#include "jetfit/metrics.hpp"
#include "jetfit/surfaces.hpp"

namespace jetfit::lab {

/// Empirical convergence data: mean error per patch radius plus the fitted
/// log-log slope. Radii below the machine-noise floor are excluded from the
/// slope regression; a fit that is exact at every radius sets exact_fit and
/// leaves the slope undefined (NaN).
struct ConvergenceReport {
    std::vector<double> h_values;  // strictly decreasing
    std::vector<double> errors;    // mean error per h
    double slope = 0.0;
    double slope_expected = 0.0;
    bool exact_fit = false;
};

struct StudyConfig {
    int n_points = 64;
    std::uint64_t base_seed = 1234;
};

/// Mean max-abs error of the fitted degree-k coefficients against the true
/// Taylor coefficients, per h, with the log-log slope (expected n - k + 1).
ConvergenceReport convergence_study(const AnalyticSurface& surface, int order_n,
                                    int coeff_degree_k, const std::vector<double>& h_values,
                                    int trials, const StudyConfig& cfg = {});

/// Same harness but the error is the unoriented angle to the analytic
/// normal, in degrees (expected slope n).
ConvergenceReport normal_convergence_study(const AnalyticSurface& surface, int order_n,
                                           const std::vector<double>& h_values, int trials,
                                           const StudyConfig& cfg = {});

/// Per-bin mean normal error, binned by the angle between the tilted true
/// normal and +z. `raw` fits once in the tilted frame; `aligned` runs the
/// z-direction iteration.
struct ZAngleProfile {
    std::vector<double> bin_edges_deg;  // n_bins + 1 edges over [0, 90]
    std::vector<double> mean_raw_deg;
    std::vector<double> mean_aligned_deg;
    std::vector<int> counts;
    bool has_empty_bin = false;
};

ZAngleProfile zangle_error_profile(const AnalyticSurface& surface, const SampleSpec& spec_template,
                                   int n_bins, int trials, int order_n = 3,
                                   WeightScheme weighting = WeightScheme::uniform);

// ---------------------------------------------------------------------------
// Pipeline comparison harness

enum class Pipeline {
    pca,
    jet_uniform,
    jet_gaussian,
    jet_irls,
};

enum class FitMode {
    single_pass,  // one fit in the PCA frame
    z_aligned,    // iterative z-direction alignment
};

std::string pipeline_name(Pipeline p);
std::string fit_mode_name(FitMode m);

struct BenchCell {
    std::string surface;
    std::string condition;
    Pipeline pipeline;
    FitMode mode;
    MetricsReport metrics;
};

struct BenchTable {
    std::vector<BenchCell> cells;
};

struct NamedSurface {
    std::string name;
    AnalyticSurface surface;
};

struct NamedCondition {
    std::string name;
    SampleSpec spec;  // seed field is a base; trials offset it
};

/// One normal estimate per (surface, condition, pipeline, mode, trial);
/// trials within a cell share seeds across pipelines so columns are paired.
/// Per-patch fit failures are counted and excluded from the metrics.
BenchTable compare_pipelines(const std::vector<NamedSurface>& surfaces,
                             const std::vector<NamedCondition>& conditions,
                             const std::vector<Pipeline>& pipelines,
                             const std::vector<FitMode>& modes, int trials, int order_n = 3);

/// Estimates the world-frame normal of one patch under a pipeline/mode.
UnitVector3 estimate_patch_normal(const PatchNeighborhood& patch, Pipeline pipeline, FitMode mode,
                                  int order_n);

}  // namespace jetfit::lab

#endif
