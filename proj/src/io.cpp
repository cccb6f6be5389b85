#include "jetfit/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace jetfit::io {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

std::vector<std::array<double, 3>> read_triples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<std::array<double, 3>> rows;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ss >> tok) {
            if (tok[0] == '#') break;  // trailing comment
            tokens.push_back(tok);
        }
        if (tokens.empty()) continue;  // blank or comment-only line
        if (tokens.size() != 3) {
            throw IoError(path + ":" + std::to_string(line_no) + ": expected 3 values, got " +
                              std::to_string(tokens.size()),
                          line_no);
        }
        std::array<double, 3> row{};
        for (int c = 0; c < 3; ++c) {
            if (!parse_double(tokens[c], row[c])) {
                throw IoError(path + ":" + std::to_string(line_no) +
                                  ": malformed value '" + tokens[c] + "'",
                              line_no);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

}  // namespace

PointCloud read_xyz(const std::string& path) {
    PointCloud cloud;
    for (const auto& row : read_triples(path)) {
        cloud.points.emplace_back(row[0], row[1], row[2]);
    }
    if (cloud.points.empty()) throw IoError("empty point cloud: " + path);
    return cloud;
}

std::vector<UnitVector3> read_normals(const std::string& path) {
    std::vector<UnitVector3> normals;
    for (const auto& row : read_triples(path)) {
        normals.emplace_back(Vec3(row[0], row[1], row[2]));
    }
    return normals;
}

void write_xyz(const std::string& path, const std::vector<Vec3>& points) {
    std::ofstream out = open_out(path);
    for (const Vec3& p : points) {
        out << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
            << format_double(p.z()) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_normals(const std::string& path, const std::vector<UnitVector3>& normals) {
    std::ofstream out = open_out(path);
    for (const UnitVector3& n : normals) {
        out << format_double(n.x()) << ' ' << format_double(n.y()) << ' '
            << format_double(n.z()) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_error_ply(const std::string& path, const PointCloud& cloud,
                     const std::vector<double>& errors_deg, double max_deg) {
    if (errors_deg.size() != cloud.points.size()) {
        throw IoError("write_error_ply: error count does not match point count");
    }
    if (max_deg <= 0.0) throw IoError("write_error_ply: max_deg must be > 0");
    std::ofstream out = open_out(path);
    out << "ply\n"
        << "format ascii 1.0\n"
        << "comment angle error colormap over [0, " << format_double(max_deg) << "] degrees\n"
        << "element vertex " << cloud.points.size() << '\n'
        << "property float x\nproperty float y\nproperty float z\n"
        << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
        << "end_header\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const double t = std::clamp(errors_deg[i] / max_deg, 0.0, 1.0);
        const int red = static_cast<int>(std::lround(255.0 * t));
        const int blue = static_cast<int>(std::lround(255.0 * (1.0 - t)));
        const Vec3& p = cloud.points[i];
        out << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
            << format_double(p.z()) << ' ' << red << " 0 " << blue << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_convergence_csv(const std::string& path, const lab::ConvergenceReport& report) {
    std::ofstream out = open_out(path);
    out << "h,mean_error,slope,slope_expected\n";
    for (std::size_t i = 0; i < report.h_values.size(); ++i) {
        out << format_double(report.h_values[i]) << ',' << format_double(report.errors[i]) << ','
            << format_double(report.slope) << ',' << format_double(report.slope_expected)
            << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_bench_csv(const std::string& path, const lab::BenchTable& table) {
    std::ofstream out = open_out(path);
    out << "surface,condition,pipeline,mode,trials,failures,rmse_deg,pgp5,pgp10,auc\n";
    for (const lab::BenchCell& cell : table.cells) {
        out << cell.surface << ',' << cell.condition << ',' << lab::pipeline_name(cell.pipeline)
            << ',' << lab::fit_mode_name(cell.mode) << ',' << cell.metrics.trials << ','
            << cell.metrics.failures << ',' << format_double(cell.metrics.rmse) << ','
            << format_double(cell.metrics.pgp.at(5.0)) << ','
            << format_double(cell.metrics.pgp.at(10.0)) << ',' << format_double(cell.metrics.auc)
            << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_profile_csv(const std::string& path, const lab::ZAngleProfile& profile) {
    std::ofstream out = open_out(path);
    out << "bin_lo_deg,bin_hi_deg,count,mean_raw_deg,mean_aligned_deg\n";
    for (std::size_t b = 0; b + 1 < profile.bin_edges_deg.size(); ++b) {
        out << format_double(profile.bin_edges_deg[b]) << ','
            << format_double(profile.bin_edges_deg[b + 1]) << ',' << profile.counts[b] << ','
            << format_double(profile.mean_raw_deg[b]) << ','
            << format_double(profile.mean_aligned_deg[b]) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace jetfit::io
