#pragma once

#include "lmtree/dataset.hpp"

#include <cstdint>

namespace lmtree {

// Gaussian multi-class generator. Each class is a unit-variance spherical
// Gaussian over `features` columns. The last noise_features columns are pure
// N(0, 1) carrying no class information; in each remaining (informative)
// column the class centers are standardized so their population spread is
// exactly 4 / (1 + overlap): overlap 0 keeps the classes far apart (two
// classes sit 8 standard deviations apart per dimension) and growing overlap
// pulls the centers together without bound.
struct SyntheticSpec {
  int classes = 3;
  int features = 4;        // total columns m
  int noise_features = 0;  // trailing class-independent columns, <= features
  int examples_per_class = 100;
  double overlap = 0.0;          // >= 0
  int recordings_per_class = 0;  // 0 = no recording ids
  std::uint64_t seed = 1;
};

// Rows come out class-major (all of class 1, then class 2, ...), examples in
// generation order, so a fixed spec + seed reproduces the dataset exactly.
// With recordings_per_class > 0 each class's rows are cut into that many
// consecutive, nearly equal recordings named c<q>_r<k>.
Dataset generate_synthetic(const SyntheticSpec& spec);

// Center spread per informative dimension for a given overlap.
double center_spread(double overlap);

}  // namespace lmtree
