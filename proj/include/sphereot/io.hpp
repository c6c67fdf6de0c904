#pragma once

#include <string>

#include "sphereot/cconvex.hpp"
#include "sphereot/discrete_ot.hpp"
#include "sphereot/sphere.hpp"

namespace sphereot {

// Plain-text row-major matrix format: one row per line, whitespace-separated
// decimals. Used for group-element files on the CLI boundary.
Mat read_matrix(const std::string& path);
void write_matrix(const std::string& path, const Mat& m);

// CSV emitters. All numbers are printed with %.17g so runs are diffable.
std::string format_double(double v);

void write_profile_csv(const std::string& path, const MeridianProfile& profile,
                       int samples);
void write_grid_csv(const std::string& path, const GridFunction& grid);
void write_cloud_csv(const std::string& path, const DiscreteMeasure& mu);
void write_map_csv(const std::string& path, const std::vector<SpherePoint>& source,
                   const std::vector<SpherePoint>& target);
void write_plan_csv(const std::string& path, const TransportPlan& plan,
                    double threshold = 0.0);  // sparse triplets above threshold

// Map CSV reader for the compare command: index, source coords, target coords.
void read_map_csv(const std::string& path, std::vector<SpherePoint>& source,
                  std::vector<SpherePoint>& target);

}  // namespace sphereot
