#ifndef JETFIT_IO_HPP
#define JETFIT_IO_HPP

#include <string>
#include <vector>

#include "jetfit/geom.hpp"
#include "jetfit/studies.hpp"

namespace jetfit::io {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

/// ASCII .xyz: three whitespace-separated decimals per line, '#' comments.
/// Malformed lines raise IoError carrying the 1-based line number.
PointCloud read_xyz(const std::string& path);

/// ASCII .normals, same grammar; components are kept bit-exact.
std::vector<UnitVector3> read_normals(const std::string& path);

void write_xyz(const std::string& path, const std::vector<Vec3>& points);
void write_normals(const std::string& path, const std::vector<UnitVector3>& normals);

/// ASCII PLY with per-vertex position and a linear blue-to-red colormap of
/// clamp(error / max_deg, 0, 1).
void write_error_ply(const std::string& path, const PointCloud& cloud,
                     const std::vector<double>& errors_deg, double max_deg = 60.0);

void write_convergence_csv(const std::string& path, const lab::ConvergenceReport& report);
void write_bench_csv(const std::string& path, const lab::BenchTable& table);
void write_profile_csv(const std::string& path, const lab::ZAngleProfile& profile);

}  // namespace jetfit::io

#endif
