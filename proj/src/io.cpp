#include "sphereot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace sphereot {

Mat read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::IoError, "empty matrix file: " + path);
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      fail(ErrorCode::IoError, "ragged matrix file: " + path);
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open output file: " + path);
  return out;
}

void write_coords(std::ofstream& out, const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << format_double(v[i]);
}

}  // namespace

void write_matrix(const std::string& path, const Mat& m) {
  std::ofstream out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? " " : "") << format_double(m(i, j));
    out << '\n';
  }
}

void write_profile_csv(const std::string& path, const MeridianProfile& profile,
                       int samples) {
  std::ofstream out = open_out(path);
  out << "x,value\n";
  for (int i = 0; i <= samples; ++i) {
    double x = profile.period() * i / samples;
    out << format_double(x) << ',' << format_double(profile.eval(x)) << '\n';
  }
}

void write_grid_csv(const std::string& path, const GridFunction& grid) {
  std::ofstream out = open_out(path);
  out << "index";
  for (Eigen::Index i = 0; i < grid.nodes[0].ambient_dim(); ++i) out << ",x" << i;
  out << ",value\n";
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    out << i;
    write_coords(out, grid.nodes[i].coords());
    out << ',' << format_double(grid.values[i]) << '\n';
  }
}

void write_cloud_csv(const std::string& path, const DiscreteMeasure& mu) {
  std::ofstream out = open_out(path);
  out << "index";
  for (Eigen::Index i = 0; i < mu.points[0].ambient_dim(); ++i) out << ",x" << i;
  out << ",weight\n";
  for (int i = 0; i < mu.size(); ++i) {
    out << i;
    write_coords(out, mu.points[i].coords());
    out << ',' << format_double(mu.weights[i]) << '\n';
  }
}

void write_map_csv(const std::string& path, const std::vector<SpherePoint>& source,
                   const std::vector<SpherePoint>& target) {
  if (source.size() != target.size())
    fail(ErrorCode::SizeMismatch, "map CSV needs matching source/target sizes");
  std::ofstream out = open_out(path);
  out << "index";
  for (Eigen::Index i = 0; i < source[0].ambient_dim(); ++i) out << ",x" << i;
  for (Eigen::Index i = 0; i < target[0].ambient_dim(); ++i) out << ",y" << i;
  out << '\n';
  for (std::size_t i = 0; i < source.size(); ++i) {
    out << i;
    write_coords(out, source[i].coords());
    write_coords(out, target[i].coords());
    out << '\n';
  }
}

void write_plan_csv(const std::string& path, const TransportPlan& plan,
                    double threshold) {
  std::ofstream out = open_out(path);
  out << "row,col,mass\n";
  for (Eigen::Index i = 0; i < plan.coupling.rows(); ++i)
    for (Eigen::Index j = 0; j < plan.coupling.cols(); ++j)
      if (plan.coupling(i, j) > threshold)
        out << i << ',' << j << ',' << format_double(plan.coupling(i, j)) << '\n';
}

void read_map_csv(const std::string& path, std::vector<SpherePoint>& source,
                  std::vector<SpherePoint>& target) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open map CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::IoError, "empty map CSV: " + path);
  // header: index,x0..xd,y0..yd
  int cols = 1;
  for (char c : line)
    if (c == ',') ++cols;
  int ambient = (cols - 1) / 2;
  if (ambient < 2 || cols != 1 + 2 * ambient)
    fail(ErrorCode::IoError, "malformed map CSV header: " + path);
  source.clear();
  target.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
    if ((int)vals.size() != cols) fail(ErrorCode::IoError, "malformed map CSV row");
    Vec s(ambient), t(ambient);
    for (int i = 0; i < ambient; ++i) {
      s[i] = vals[1 + i];
      t[i] = vals[1 + ambient + i];
    }
    source.push_back(SpherePoint::normalized(s));
    target.push_back(SpherePoint::normalized(t));
  }
}

}  // namespace sphereot
