#include "lmtree/synthetic.hpp"

#include "lmtree/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmtree {

double center_spread(double overlap) { return 4.0 / (1.0 + overlap); }

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.classes < 2) throw std::invalid_argument("synthetic: need at least 2 classes");
  if (spec.features < 1)
    throw std::invalid_argument("synthetic: need at least one feature");
  if (spec.noise_features < 0 || spec.noise_features > spec.features)
    throw std::invalid_argument(
        "synthetic: noise_features must be in [0, features]");
  if (spec.examples_per_class < 1)
    throw std::invalid_argument("synthetic: need at least one example per class");
  if (!(spec.overlap >= 0.0))
    throw std::invalid_argument("synthetic: overlap must be >= 0");
  if (spec.recordings_per_class < 0 ||
      spec.recordings_per_class > spec.examples_per_class)
    throw std::invalid_argument(
        "synthetic: recordings_per_class must be in [0, examples_per_class]");

  const int r = spec.classes;
  const int m = spec.features;
  const int mi = m - spec.noise_features;
  const int n_q = spec.examples_per_class;
  const double spread = center_spread(spec.overlap);

  // Standardized centers: per informative dimension, draw one value per
  // class, z-score across classes, scale by the target spread. The per-dim
  // class-mean standard deviation is then exactly `spread` by construction.
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(r, m);
  {
    Rng rng(derive_seed(spec.seed, "centers"));
    for (int j = 0; j < mi; ++j) {
      Eigen::VectorXd raw(r);
      for (int q = 0; q < r; ++q) raw[q] = rng.normal();
      const double mean = raw.mean();
      raw.array() -= mean;
      double sd = std::sqrt(raw.squaredNorm() / static_cast<double>(r));
      while (sd == 0.0) {  // all r draws identical; essentially unreachable
        for (int q = 0; q < r; ++q) raw[q] = rng.normal();
        raw.array() -= raw.mean();
        sd = std::sqrt(raw.squaredNorm() / static_cast<double>(r));
      }
      centers.col(j) = raw * (spread / sd);
    }
  }

  Eigen::MatrixXd features(static_cast<Eigen::Index>(r) * n_q, m);
  std::vector<long long> labels;
  labels.reserve(static_cast<std::size_t>(r) * static_cast<std::size_t>(n_q));
  std::vector<std::string> recording_ids;
  if (spec.recordings_per_class > 0)
    recording_ids.reserve(labels.capacity());

  for (int q = 0; q < r; ++q) {
    Rng rng(derive_seed(spec.seed, "samples", static_cast<std::uint64_t>(q)));
    for (int i = 0; i < n_q; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(q) * n_q + i;
      for (int j = 0; j < m; ++j)
        features(row, j) = centers(q, j) + rng.normal();
      labels.push_back(q + 1);
      if (spec.recordings_per_class > 0) {
        // i * k / n_q walks 0..k-1 in nearly equal consecutive chunks.
        const int chunk = static_cast<int>(
            (static_cast<long long>(i) * spec.recordings_per_class) / n_q);
        recording_ids.push_back("c" + std::to_string(q + 1) + "_r" +
                                std::to_string(chunk + 1));
      }
    }
  }

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) names.push_back("f" + std::to_string(j + 1));

  return make_dataset(std::move(features), labels, std::move(recording_ids),
                      std::move(names));
}

}  // namespace lmtree
