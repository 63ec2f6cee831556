#pragma once

#include "lmtree/dataset.hpp"
#include "lmtree/tlu.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace lmtree {

// Monolithic r-class linear machine: one weight row per class over bias +
// all m features; decides by winner-take-all over the class responses.
struct LinearMachineModel {
  Eigen::MatrixXd weights;  // r x (m+1), column 0 is the bias weight

  int class_count() const { return static_cast<int>(weights.rows()); }
  int feature_count() const { return static_cast<int>(weights.cols()) - 1; }
  void validate() const;
};

// Class responses g_1..g_r for one example (x has the m raw features).
Eigen::VectorXd lm_discriminants(const LinearMachineModel& model,
                                 const Eigen::VectorXd& x);

// Winner-take-all: argmax response, lowest class index on ties.
int lm_classify(const LinearMachineModel& model, const Eigen::VectorXd& x);

// Batch classification of an n x m feature matrix into labels 1..r.
std::vector<int> lm_classify_batch(const LinearMachineModel& model,
                                   const Eigen::MatrixXd& features);

double lm_accuracy(const LinearMachineModel& model, const Dataset& data);

struct LmTrainResult {
  LinearMachineModel model;  // pocketed weights
  PocketState state;
  TrainStats stats;
};

// Joint pocket training of all r discriminants: a misclassified (x, q) adds
// c*x to the true class's row and subtracts c*x from the winner's, so the
// row sum is invariant. Ratchet bookkeeping, example sampling, accuracy
// memoization, and seed substreams ("init", "train") match train_binary;
// epochs counts example presentations, 0 meaning the training-set size.
LmTrainResult lm_pocket_train(const Dataset& data, long long epochs, double c,
                              std::uint64_t seed,
                              ResetMode reset_mode = ResetMode::standard,
                              const Eigen::MatrixXd* init = nullptr);

}  // namespace lmtree
