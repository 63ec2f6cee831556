#pragma once

#include "lmtree/dataset.hpp"
#include "lmtree/feature_select.hpp"
#include "lmtree/tlu.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace lmtree {

// Number of unordered class pairs, r(r-1)/2.
int pair_count(int r);

// Flat index of pair (i, j), 1 <= i < j <= r, in the canonical order
// (1,2), (1,3), ..., (1,r), (2,3), ..., (r-1,r).
int pair_index(int i, int j, int r);

// One trained pairwise test: answers +1 for class_i, -1 for class_j.
struct PairwiseTest {
  int class_i = 0;  // positive class, i < j
  int class_j = 0;  // negative class
  TLUModel tlu;
  double training_error = 0.0;  // 1 - accuracy on the pair's training rows
  int feature_count = 0;
};

// r(r-1)/2 independent tests plus the fixed +/-1 superposition into r class
// discriminants, decided by winner-take-all.
struct PairwiseEnsembleModel {
  int class_count = 0;
  std::vector<PairwiseTest> tests;  // canonical pair order

  void validate() const;
};

// The fixed output wiring: S(i-1, pair_index(i,k)) = +1 for k > i and
// S(i-1, pair_index(k,i)) = -1 for k < i. Each row has r-1 nonzeros, each
// column exactly one +1 and one -1; discriminants(x) = S * signs(x).
Eigen::MatrixXd sign_wiring_matrix(int r);

// Hard test outputs (+1/-1) for one example, canonical pair order.
Eigen::VectorXd test_signs(const PairwiseEnsembleModel& model,
                           const Eigen::VectorXd& x);

// g_i(x) = sum_{k>i} sign f_ik(x) - sum_{k<i} sign f_ki(x). Integer-valued;
// the r discriminants always sum to zero.
Eigen::VectorXd discriminants(const PairwiseEnsembleModel& model,
                              const Eigen::VectorXd& x);

// Winner-take-all over the discriminants, lowest class index on ties.
int classify(const PairwiseEnsembleModel& model, const Eigen::VectorXd& x);
std::vector<int> classify_batch(const PairwiseEnsembleModel& model,
                                const Eigen::MatrixXd& features);

struct PairwiseTrainResult {
  PairwiseEnsembleModel model;
  SfsStats total;                  // selection + training cost over all pairs
  std::vector<SfsStats> per_pair;  // aligned with model.tests
};

// Trains one test per unordered class pair on that pair's rows only, running
// feature selection (multi_attempt_select) with the pair's own seed stream
// derived from `seed`; selector.seed is ignored. jobs > 1 trains pairs
// concurrently — results are identical to the sequential run.
PairwiseTrainResult train_pairwise(const Dataset& data, const SFSConfig& selector,
                                   std::uint64_t seed, int jobs = 1);

// Majority vote of one recording's segment classifications.
struct RecordingDecision {
  std::vector<long long> class_histogram;  // size r, sums to the segment count
  int assigned_class = 0;                  // argmax, lowest index on ties
  double confidence = 0.0;                 // 100 * max count / total
};

// Histogram of already-predicted labels (1..r each).
RecordingDecision aggregate_votes(const std::vector<int>& predicted, int r);

// Classifies each row of `segments` and aggregates the votes.
RecordingDecision aggregate_recording(const PairwiseEnsembleModel& model,
                                      const Eigen::MatrixXd& segments);

struct EvalResult {
  double segment_accuracy = 0.0;
  std::optional<double> recording_accuracy;  // set when recording ids exist
  long long segments = 0;
  long long recordings = 0;
};

// Scores per-row predictions against the dataset; when recording ids are
// present each recording is additionally scored by its aggregated vote
// (a recording's true class is its first segment's label).
EvalResult evaluate_predictions(const std::vector<int>& predicted,
                                const Dataset& data);
EvalResult evaluate(const PairwiseEnsembleModel& model, const Dataset& data);

}  // namespace lmtree
