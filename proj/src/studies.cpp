#include "jetfit/studies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace jetfit::lab {

namespace {

constexpr double kNoiseFloor = 1e-12;

double loglog_slope(const std::vector<double>& h_values, const std::vector<double>& errors) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < h_values.size(); ++i) {
        if (errors[i] > kNoiseFloor) {
            lx.push_back(std::log(h_values[i]));
            ly.push_back(std::log(errors[i]));
        }
    }
    if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> sorted_descending(std::vector<double> h_values) {
    std::sort(h_values.begin(), h_values.end(), std::greater<>());
    if (h_values.empty()) throw Error("convergence study: empty h list");
    for (std::size_t i = 1; i < h_values.size(); ++i) {
        if (h_values[i] == h_values[i - 1]) throw Error("convergence study: duplicate h value");
    }
    return h_values;
}

// Mean over trials of a per-trial error; trials run in parallel but the
// reduction is an ordered serial sum, so results are thread-count invariant.
template <typename ErrorFn>
std::vector<double> mean_errors_per_h(const std::vector<double>& h_values, int trials,
                                      const StudyConfig& cfg, const ErrorFn& error_fn) {
    std::vector<double> means(h_values.size(), 0.0);
    for (std::size_t hi = 0; hi < h_values.size(); ++hi) {
        std::vector<double> per_trial(trials);
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) {
            per_trial[t] = error_fn(h_values[hi], cfg.base_seed + 1000003ULL * hi + t);
        }
        double sum = 0.0;
        for (int t = 0; t < trials; ++t) sum += per_trial[t];
        means[hi] = sum / trials;
    }
    return means;
}

}  // namespace

ConvergenceReport convergence_study(const AnalyticSurface& surface, int order_n,
                                    int coeff_degree_k, const std::vector<double>& h_values,
                                    int trials, const StudyConfig& cfg) {
    if (coeff_degree_k < 0 || coeff_degree_k > order_n) {
        throw Error("convergence_study: need 0 <= k <= n");
    }
    if (trials < 1) throw Error("convergence_study: trials must be >= 1");
    const JetCoefficients truth = surface.taylor(order_n);

    ConvergenceReport report;
    report.h_values = sorted_descending(h_values);
    report.slope_expected = static_cast<double>(order_n - coeff_degree_k + 1);
    report.errors = mean_errors_per_h(
        report.h_values, trials, cfg, [&](double h, std::uint64_t seed) {
            SampleSpec spec;
            spec.h = h;
            spec.n_points = cfg.n_points;
            spec.seed = seed;
            const SampledPatch sampled = sample_patch(surface, spec);
            const JetFit fit =
                fit_jet(sampled.patch, uniform_weights(spec.n_points), order_n);
            double err = 0.0;
            for (int j = 0; j <= coeff_degree_k; ++j) {
                const int idx = JetCoefficients::index(coeff_degree_k - j, j);
                err = std::max(err,
                               std::abs(fit.coefficients.coeffs[idx] - truth.coeffs[idx]));
            }
            return err;
        });

    report.exact_fit = std::all_of(report.errors.begin(), report.errors.end(),
                                   [](double e) { return e <= kNoiseFloor; });
    report.slope = loglog_slope(report.h_values, report.errors);
    return report;
}

ConvergenceReport normal_convergence_study(const AnalyticSurface& surface, int order_n,
                                           const std::vector<double>& h_values, int trials,
                                           const StudyConfig& cfg) {
    if (trials < 1) throw Error("normal_convergence_study: trials must be >= 1");
    const UnitVector3 truth = surface.query_normal();

    ConvergenceReport report;
    report.h_values = sorted_descending(h_values);
    report.slope_expected = static_cast<double>(order_n);
    report.errors = mean_errors_per_h(
        report.h_values, trials, cfg, [&](double h, std::uint64_t seed) {
            SampleSpec spec;
            spec.h = h;
            spec.n_points = cfg.n_points;
            spec.seed = seed;
            const SampledPatch sampled = sample_patch(surface, spec);
            const JetFit fit =
                fit_jet(sampled.patch, uniform_weights(spec.n_points), order_n);
            return angle_error(fit.normal, truth);
        });

    report.exact_fit = std::all_of(report.errors.begin(), report.errors.end(),
                                   [](double e) { return e <= kNoiseFloor; });
    report.slope = loglog_slope(report.h_values, report.errors);
    return report;
}

ZAngleProfile zangle_error_profile(const AnalyticSurface& surface, const SampleSpec& spec_template,
                                   int n_bins, int trials, int order_n, WeightScheme weighting) {
    if (n_bins < 1) throw Error("zangle_error_profile: n_bins must be >= 1");
    if (trials < n_bins) throw Error("zangle_error_profile: need at least one trial per bin");

    ZAngleProfile profile;
    profile.bin_edges_deg.resize(n_bins + 1);
    for (int b = 0; b <= n_bins; ++b) profile.bin_edges_deg[b] = 90.0 * b / n_bins;
    profile.mean_raw_deg.assign(n_bins, 0.0);
    profile.mean_aligned_deg.assign(n_bins, 0.0);
    profile.counts.assign(n_bins, 0);

    struct Trial {
        int bin;
        double raw;
        double aligned;
    };
    std::vector<Trial> results(trials);

#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        // Round-robin over bins; tilt drawn uniformly inside the bin.
        const int bin = t % n_bins;
        std::mt19937_64 rng(spec_template.seed + 7919ULL * t);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        SampleSpec spec = spec_template;
        spec.seed = spec_template.seed + 15485863ULL * t + 1;
        spec.tilt_deg =
            profile.bin_edges_deg[bin] +
            unit(rng) * (profile.bin_edges_deg[bin + 1] - profile.bin_edges_deg[bin]);

        const SampledPatch sampled = sample_patch(surface, spec);
        const int actual_bin = std::min(
            n_bins - 1, static_cast<int>(angle_error(sampled.gt_normal, UnitVector3(0, 0, 1)) /
                                         (90.0 / n_bins)));

        const JetFit raw_fit =
            fit_with_scheme(sampled.patch, order_n, weighting);  // tilted frame, no alignment
        const AlignmentResult aligned =
            z_align_iterate(sampled.patch, weighting, order_n);

        results[t] = Trial{actual_bin, angle_error(raw_fit.normal, sampled.gt_normal),
                           angle_error(world_normal(aligned), sampled.gt_normal)};
    }

    for (const Trial& trial : results) {
        profile.mean_raw_deg[trial.bin] += trial.raw;
        profile.mean_aligned_deg[trial.bin] += trial.aligned;
        profile.counts[trial.bin] += 1;
    }
    for (int b = 0; b < n_bins; ++b) {
        if (profile.counts[b] == 0) {
            profile.has_empty_bin = true;
            profile.mean_raw_deg[b] = std::numeric_limits<double>::quiet_NaN();
            profile.mean_aligned_deg[b] = std::numeric_limits<double>::quiet_NaN();
        } else {
            profile.mean_raw_deg[b] /= profile.counts[b];
            profile.mean_aligned_deg[b] /= profile.counts[b];
        }
    }
    return profile;
}

std::string pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::pca: return "pca";
        case Pipeline::jet_uniform: return "jet-uniform";
        case Pipeline::jet_gaussian: return "jet-gaussian";
        case Pipeline::jet_irls: return "jet-irls";
    }
    return "unknown";
}

std::string fit_mode_name(FitMode m) {
    return m == FitMode::single_pass ? "single-pass" : "z-aligned";
}

UnitVector3 estimate_patch_normal(const PatchNeighborhood& patch, Pipeline pipeline, FitMode mode,
                                  int order_n) {
    if (pipeline == Pipeline::pca) return pca_normal(patch);

    WeightScheme scheme = WeightScheme::uniform;
    if (pipeline == Pipeline::jet_gaussian) scheme = WeightScheme::gaussian;
    if (pipeline == Pipeline::jet_irls) scheme = WeightScheme::irls;

    if (mode == FitMode::single_pass) {
        const Rotation frame = pca_align(patch);
        const JetFit fit = fit_with_scheme(apply_rotation(frame, patch), order_n, scheme);
        return frame.inverse().apply(fit.normal);
    }
    return world_normal(z_align_iterate(patch, scheme, order_n));
}

BenchTable compare_pipelines(const std::vector<NamedSurface>& surfaces,
                             const std::vector<NamedCondition>& conditions,
                             const std::vector<Pipeline>& pipelines,
                             const std::vector<FitMode>& modes, int trials, int order_n) {
    if (surfaces.empty() || conditions.empty() || pipelines.empty() || modes.empty()) {
        throw Error("compare_pipelines: empty grid");
    }
    if (trials < 1) throw Error("compare_pipelines: trials must be >= 1");

    BenchTable table;
    for (const NamedSurface& surf : surfaces) {
        for (const NamedCondition& cond : conditions) {
            // Shared patches across pipelines so comparisons are paired.
            std::vector<SampledPatch> sampled(trials);
#pragma omp parallel for schedule(dynamic)
            for (int t = 0; t < trials; ++t) {
                SampleSpec spec = cond.spec;
                spec.seed = cond.spec.seed + 2654435761ULL * t;
                sampled[t] = sample_patch(surf.surface, spec);
            }
            for (Pipeline pipeline : pipelines) {
                for (FitMode mode : modes) {
                    std::vector<double> errors(trials,
                                               std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(dynamic)
                    for (int t = 0; t < trials; ++t) {
                        try {
                            const UnitVector3 est = estimate_patch_normal(
                                sampled[t].patch, pipeline, mode, order_n);
                            errors[t] = angle_error(est, sampled[t].gt_normal);
                        } catch (const Error&) {
                            // leave NaN: recorded as a failure below
                        }
                    }
                    std::vector<double> ok;
                    ok.reserve(trials);
                    for (double e : errors) {
                        if (!std::isnan(e)) ok.push_back(e);
                    }
                    BenchCell cell;
                    cell.surface = surf.name;
                    cell.condition = cond.name;
                    cell.pipeline = pipeline;
                    cell.mode = mode;
                    cell.metrics =
                        summarize_errors(ok, trials - static_cast<int>(ok.size()));
                    table.cells.push_back(std::move(cell));
                }
            }
        }
    }
    return table;
}

}  // namespace jetfit::lab
