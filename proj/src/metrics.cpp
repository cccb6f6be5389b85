#include "jetfit/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace jetfit::lab {

double angle_error(const UnitVector3& a, const UnitVector3& b) {
    const double c = std::min(1.0, std::abs(a.dot(b)));
    return std::acos(c) * 180.0 / M_PI;
}

double rmse_deg(const std::vector<double>& errors) {
    if (errors.empty()) throw Error("rmse_deg: empty error list");
    double sum_sq = 0.0;
    for (double e : errors) sum_sq += e * e;
    return std::sqrt(sum_sq / static_cast<double>(errors.size()));
}

double pgp(const std::vector<double>& errors, double alpha) {
    if (errors.empty()) throw Error("pgp: empty error list");
    const auto good = std::count_if(errors.begin(), errors.end(),
                                    [alpha](double e) { return e < alpha; });
    return static_cast<double>(good) / static_cast<double>(errors.size());
}

PgpCurve auc_curve(const std::vector<double>& errors, double max_deg) {
    if (errors.empty()) throw Error("auc_curve: empty error list");
    if (max_deg < 1.0) throw Error("auc_curve: max_deg must be >= 1");
    PgpCurve curve;
    double sum = 0.0;
    for (int t = 1; t <= static_cast<int>(max_deg); ++t) {
        const double frac = pgp(errors, static_cast<double>(t));
        curve.points.emplace_back(static_cast<double>(t), frac);
        sum += frac;
    }
    curve.auc = sum / static_cast<double>(curve.points.size());
    return curve;
}

MetricsReport summarize_errors(const std::vector<double>& errors, int failures) {
    MetricsReport report;
    report.rmse = rmse_deg(errors);
    report.pgp[5.0] = pgp(errors, 5.0);
    report.pgp[10.0] = pgp(errors, 10.0);
    report.auc = auc_curve(errors, 90.0).auc;
    report.trials = static_cast<int>(errors.size()) + failures;
    report.failures = failures;
    return report;
}

}  // namespace jetfit::lab
