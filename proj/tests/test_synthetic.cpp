#include <doctest.h>

#include "lmtree/synthetic.hpp"
#include "lmtree/tlu.hpp"

#include <cmath>
#include <set>
#include <string>
#include <vector>

using namespace lmtree;

namespace {

// Empirical class-mean matrix (r x m) computed with plain loops.
Eigen::MatrixXd class_means(const Dataset& ds) {
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(ds.class_count, ds.feature_count());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(ds.class_count);
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    const int q = ds.labels[static_cast<std::size_t>(i)];
    means.row(q - 1) += ds.features.row(i);
    counts[q - 1] += 1.0;
  }
  for (int q = 0; q < ds.class_count; ++q) means.row(q) /= counts[q];
  return means;
}

}  // namespace

TEST_SUITE("synthetic") {

TEST_CASE("shape, labels, and names") {
  SyntheticSpec spec;
  spec.classes = 4;
  spec.features = 6;
  spec.noise_features = 2;
  spec.examples_per_class = 25;
  spec.seed = 3;
  Dataset ds = generate_synthetic(spec);
  CHECK(ds.size() == 100);
  CHECK(ds.feature_count() == 6);
  CHECK(ds.class_count == 4);
  // class-major rows
  for (int q = 0; q < 4; ++q)
    for (int i = 0; i < 25; ++i)
      CHECK(ds.labels[static_cast<std::size_t>(q * 25 + i)] == q + 1);
  CHECK(ds.feature_names.front() == "f1");
  CHECK(ds.feature_names.back() == "f6");
  CHECK_FALSE(ds.has_recordings());
  ds.validate();
}

TEST_CASE("identical spec and seed reproduce the bytes; seeds differ") {
  SyntheticSpec spec;
  spec.classes = 3;
  spec.features = 4;
  spec.examples_per_class = 50;
  spec.seed = 11;
  Dataset a = generate_synthetic(spec);
  Dataset b = generate_synthetic(spec);
  CHECK(a.features == b.features);
  CHECK(a.labels == b.labels);
  spec.seed = 12;
  Dataset c = generate_synthetic(spec);
  CHECK(a.features != c.features);
}

TEST_CASE("center spread follows 4 / (1 + overlap)") {
  CHECK(center_spread(0.0) == doctest::Approx(4.0));
  CHECK(center_spread(1.0) == doctest::Approx(2.0));
  CHECK(center_spread(3.0) == doctest::Approx(1.0));
  CHECK(center_spread(7.0) == doctest::Approx(0.5));
}

TEST_CASE("overlap 0 leaves two classes separable on a single feature") {
  SyntheticSpec spec;
  spec.classes = 2;
  spec.features = 1;
  spec.examples_per_class = 100;
  spec.overlap = 0.0;
  spec.seed = 21;
  Dataset ds = generate_synthetic(spec);
  // With two classes, standardized centers sit at +/- spread = +/- 4 on the
  // one informative dimension: an 8-sigma gap. A trained threshold on that
  // single feature must reach training accuracy 1.
  BinaryProblem prob = make_binary_problem(ds, 1, 2, {1});
  TrainerConfig cfg;
  cfg.epochs = 10 * ds.size();
  BinaryTrainResult res = train_binary(prob, cfg, 5);
  CHECK(res.state.pocket_accuracy == 1.0);
  CHECK(binary_accuracy(prob, res.model.weights) == 1.0);
}

TEST_CASE("raising overlap shrinks every pairwise class-mean distance") {
  SyntheticSpec spec;
  spec.classes = 3;
  spec.features = 2;
  spec.examples_per_class = 2000;
  spec.seed = 31;

  spec.overlap = 0.2;
  Eigen::MatrixXd near = class_means(generate_synthetic(spec));
  spec.overlap = 0.8;
  Eigen::MatrixXd far = class_means(generate_synthetic(spec));

  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double d_low = (near.row(i) - near.row(j)).norm();
      const double d_high = (far.row(i) - far.row(j)).norm();
      CHECK(d_high < d_low);
    }
}

TEST_CASE("all-noise data has equal class-conditional means") {
  SyntheticSpec spec;
  spec.classes = 3;
  spec.features = 4;
  spec.noise_features = 4;  // every column is class-independent
  spec.examples_per_class = 4000;
  spec.seed = 41;
  Dataset ds = generate_synthetic(spec);
  Eigen::MatrixXd means = class_means(ds);
  // each entry is a mean of 4000 N(0,1) draws: sd ~ 0.0158, use 5 sigma
  CHECK(means.cwiseAbs().maxCoeff() < 0.08);
}

TEST_CASE("noise columns are the trailing ones") {
  SyntheticSpec spec;
  spec.classes = 2;
  spec.features = 3;
  spec.noise_features = 1;
  spec.examples_per_class = 5000;
  spec.overlap = 0.0;
  spec.seed = 51;
  Eigen::MatrixXd means = class_means(generate_synthetic(spec));
  // informative columns keep the classes 2*spread = 8 apart
  CHECK(std::abs(means(0, 0) - means(1, 0)) > 6.0);
  CHECK(std::abs(means(0, 1) - means(1, 1)) > 6.0);
  // the trailing noise column does not
  CHECK(std::abs(means(0, 2) - means(1, 2)) < 0.1);
}

TEST_CASE("recordings cut each class into consecutive nearly equal chunks") {
  SyntheticSpec spec;
  spec.classes = 2;
  spec.features = 1;
  spec.examples_per_class = 11;
  spec.recordings_per_class = 3;
  spec.seed = 61;
  Dataset ds = generate_synthetic(spec);
  REQUIRE(ds.has_recordings());

  // expected ids: 11 rows split 4/4/3 per class
  std::vector<std::string> expect;
  for (int q = 1; q <= 2; ++q)
    for (int i = 0; i < 11; ++i) {
      const int chunk = i * 3 / 11;
      expect.push_back("c" + std::to_string(q) + "_r" + std::to_string(chunk + 1));
    }
  CHECK(ds.recording_ids == expect);

  std::set<std::string> distinct(ds.recording_ids.begin(), ds.recording_ids.end());
  CHECK(distinct.size() == 6);
}

TEST_CASE("invalid specs are rejected") {
  SyntheticSpec spec;
  spec.classes = 1;
  CHECK_THROWS(generate_synthetic(spec));
  spec = {};
  spec.features = 0;
  CHECK_THROWS(generate_synthetic(spec));
  spec = {};
  spec.noise_features = 5;  // exceeds features = 4
  CHECK_THROWS(generate_synthetic(spec));
  spec = {};
  spec.overlap = -0.5;
  CHECK_THROWS(generate_synthetic(spec));
  spec = {};
  spec.examples_per_class = 0;
  CHECK_THROWS(generate_synthetic(spec));
  spec = {};
  spec.recordings_per_class = 200;  // more recordings than rows
  CHECK_THROWS(generate_synthetic(spec));
}

}  // TEST_SUITE
