#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace lmtree {

// One featurized segment: the feature vector x (without the bias component;
// trainers append x0 = 1 themselves), its class q in 1..r, and the recording
// it came from.
struct LabeledExample {
  Eigen::VectorXd features;
  int label = 0;
  std::string recording_id;
};

// Immutable after construction; safe to share across workers.
struct Dataset {
  Eigen::MatrixXd features;                 // n x m, one example per row
  std::vector<int> labels;                  // size n, values in 1..r
  std::vector<std::string> recording_ids;   // empty, or size n
  std::vector<std::string> feature_names;   // empty, or size m
  std::vector<long long> label_values;      // size r; class q came from label_values[q-1]
  int class_count = 0;                      // r

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index feature_count() const { return features.cols(); }
  bool has_recordings() const { return !recording_ids.empty(); }

  LabeledExample example(Eigen::Index i) const;

  // Throws std::invalid_argument when an invariant is broken: non-finite
  // feature values, labels outside 1..r, r < 2, or size mismatches.
  void validate() const;
};

// Builds a dataset from raw rows. Labels may be arbitrary integers; they are
// remapped to contiguous 1..r in ascending original order and the mapping is
// kept in label_values.
Dataset make_dataset(Eigen::MatrixXd features,
                     const std::vector<long long>& raw_labels,
                     std::vector<std::string> recording_ids = {},
                     std::vector<std::string> feature_names = {});

// Per-feature affine transform fitted by normalize(). apply() maps new rows
// into the same normalized space (constant columns map to zero).
struct NormalizationParams {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;  // population sd; 0 flags a constant column

  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
};

struct NormalizeResult {
  Dataset data;
  NormalizationParams params;
};

// Z-scores every feature column to zero mean and unit population standard
// deviation. Columns with zero variance become all zeros.
NormalizeResult normalize(const Dataset& ds);

struct SplitSpec {
  double train_fraction = 2.0 / 3.0;  // in (0, 1)
  std::uint64_t seed = 1;
  bool group_by_recording = false;  // keep whole recordings on one side
};

struct SplitResult {
  Dataset train;
  Dataset eval;
};

// Class-stratified deterministic split. Each class contributes
// floor(train_fraction * n_q) examples to the train side, clamped so both
// sides keep at least one example of every class; the remainder evaluates.
// With group_by_recording, whole recordings are assigned instead of rows.
SplitResult split(const Dataset& ds, const SplitSpec& spec);

// Row subset, preserving the class mapping and names.
Dataset subset(const Dataset& ds, const std::vector<Eigen::Index>& rows);

// Rows of exactly two classes (labels keep their 1..r values).
Dataset pair_subset(const Dataset& ds, int class_a, int class_b);

std::vector<Eigen::Index> class_rows(const Dataset& ds, int label);

// Appends the bias column x0 = 1 in front of the features. Row-major so the
// sampled-example training loops touch contiguous memory.
using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
RowMatrixXd with_bias(const Eigen::MatrixXd& features);

}  // namespace lmtree
