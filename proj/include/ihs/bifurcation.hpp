#pragma once

// Numerical images of the singular set of the moment map.

#include <map>
#include <string>
#include <vector>

#include "ihs/poisson.hpp"

namespace ihs::bifurcation {

using poisson::Box;
using poisson::IntegrableSystem;
using poisson::Matrix;
using poisson::Vector;

struct Sample {
  Vector value;     // F-image
  Vector point;     // phase-space point where rank(dF) < n
  long long cell = 0;  // index of the seeding grid cell
};

struct BifurcationCloud {
  std::vector<Sample> samples;  // sorted lexicographically by value, then cell
  int resolution = 0;
  Box region;
};

// One seed at the centre of each of resolution^d phase-space cells; each seed
// is driven onto the singular set (smallest singular value of the field
// matrix, plus Casimir constraints) by Gauss-Newton inside the region.
BifurcationCloud bifurcation_scan(const IntegrableSystem& sys, const Box& phase_region, int resolution);

// Drive a single point onto the singular set; returns false if it does not get there.
bool descend_to_singular_set(const IntegrableSystem& sys, const Box& region, Vector& p);

std::string cloud_csv(const BifurcationCloud& cloud);
BifurcationCloud parse_cloud_csv(const std::string& text);

struct StabilityEstimate {
  int samples = 0;
  std::map<int, int> sheets_by_codim;  // codimension in image space -> count
  std::map<int, int> predicted;
  bool consistent_with_stable = false;
  std::string method = "heuristic: local PCA of nearby singular values";
};

// Throws Inconclusive when too few singular values are found near F(point).
StabilityEstimate stability_probe(const IntegrableSystem& sys, const poisson::SingularPointReport& report,
                                  double radius, int sample_count);

}  // namespace ihs::bifurcation
