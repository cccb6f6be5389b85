#ifndef JETFIT_METRICS_HPP
#define JETFIT_METRICS_HPP

#include <map>
#include <utility>
#include <vector>

#include "jetfit/geom.hpp"

namespace jetfit::lab {

/// Unoriented angle between two directions in degrees, in [0, 90].
double angle_error(const UnitVector3& a, const UnitVector3& b);

/// Root mean square of a nonempty list of angle errors (degrees).
double rmse_deg(const std::vector<double>& errors);

/// Fraction of errors strictly below the threshold alpha (degrees).
double pgp(const std::vector<double>& errors, double alpha);

struct PgpCurve {
    std::vector<std::pair<double, double>> points;  // (threshold_deg, fraction)
    double auc = 0.0;                               // mean of the fractions, in [0, 1]
};

/// PGP evaluated at 1-degree steps over (0, max_deg]; auc is the normalized
/// area under that curve.
PgpCurve auc_curve(const std::vector<double>& errors, double max_deg);

struct MetricsReport {
    double rmse = 0.0;
    std::map<double, double> pgp;  // threshold -> fraction
    double auc = 0.0;
    int trials = 0;
    int failures = 0;
};

/// rmse/PGP5/PGP10/AUC(90) summary of an error list.
MetricsReport summarize_errors(const std::vector<double>& errors, int failures = 0);

}  // namespace jetfit::lab

#endif
