#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffdyn/points.hpp"

namespace ffdyn {

enum class RegionKind { AxisBox, Ball, MC };

// Volume-measurable subset of the unit cube. Membership of rational
// points is decided exactly (closed conditions); doubles are used only
// when a fast comparison is provably on the safe side of the boundary.
class Region {
 public:
  static Region axis_box(std::vector<double> lo, std::vector<double> hi);
  // closed ball, required to lie inside the cube
  static Region ball(std::vector<double> center, double radius);
  // ball predicate clipped to the cube; volume estimated by Monte Carlo
  static Region mc_clipped_ball(std::vector<double> center, double radius,
                                uint64_t samples, uint64_t seed);
  static Region from_json(const std::string& text);
  std::string to_json() const;

  RegionKind kind() const { return kind_; }
  uint32_t dim() const { return dim_; }
  double volume() const { return volume_; }
  double volume_stderr() const { return volume_stderr_; }

  bool contains(const uint32_t* nums, uint64_t den) const;  // exact
  bool contains(const double* u) const;

  // Shell classification at width eps for a cube sample u: "plus" means
  // u lies outside the region within distance eps of it, "minus" means u
  // lies inside within eps of the complement taken inside the cube.
  // Distances are exact for boxes and balls, probe-based for mc regions.
  bool in_plus_shell(const double* u, double eps) const;
  bool in_minus_shell(const double* u, double eps) const;

 private:
  RegionKind kind_ = RegionKind::AxisBox;
  uint32_t dim_ = 0;
  std::vector<double> lo_, hi_;      // box
  std::vector<double> center_;       // ball / mc
  double radius_ = 0.0;
  double volume_ = 0.0;
  double volume_stderr_ = 0.0;
  uint64_t mc_samples_ = 0;
  uint64_t mc_seed_ = 0;
};

uint64_t count_in_region(const UnitPointSet& pts, const Region& region);

struct Deviation {
  uint64_t count = 0;
  double volume = 0.0;
  double raw = 0.0;         // |count - M * volume|
  double normalized = 0.0;  // raw / M
};
Deviation region_deviation(const UnitPointSet& pts, const Region& region);

enum class DiscrepancyMode { Exact, Grid, MonteCarlo };

struct DiscrepancyReport {
  double value = 0.0;
  std::string method;
  double error_bound = 0.0;  // 0 exact, dim*cell for grid, 1 for mc
  uint64_t points = 0;
  uint32_t dim = 0;
};

// Star discrepancy: supremum over boxes anchored at the origin of
// |empirical measure - volume|, with closed and open upper faces both
// considered. Exact mode requires dim <= 2 and at most 512 points.
DiscrepancyReport box_discrepancy(const UnitPointSet& pts, DiscrepancyMode mode,
                                  double resolution = 0.05,
                                  uint64_t samples = 10000, uint64_t seed = 1);

struct ShellEstimate {
  double epsilon = 0.0;
  double vol_plus = 0.0;
  double vol_minus = 0.0;
  double std_error = 0.0;  // larger of the two binomial errors
  uint64_t samples = 0;
};
ShellEstimate shell_volume(const Region& region, double epsilon,
                           uint64_t samples, uint64_t seed);

// Mean over all generators g of the multiplicative group of
// |N_g - M * vol|, where N_g counts the first M polynomial-schedule
// points in coordinates relative to g. Requires p^n - 1 <= cap.
double avg_primitive_root_deviation(uint64_t p, uint32_t n,
                                    const std::vector<int64_t>& poly, uint64_t M,
                                    const Region& region, uint64_t cap = 10000);

}  // namespace ffdyn
