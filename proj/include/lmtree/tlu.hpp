#pragma once

#include "lmtree/dataset.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace lmtree {

// Hard threshold: strictly positive -> +1, zero or negative -> -1.
inline int sign_of(double value) { return value > 0.0 ? 1 : -1; }

// One trained linear test over a feature subset. weights[0] is the bias
// weight (its input is the constant 1); weights[1 + k] multiplies feature
// feature_indices[k] of the parent dataset (indices are 1-based).
struct TLUModel {
  Eigen::VectorXd weights;
  std::vector<int> feature_indices;

  void validate() const;
};

struct TLUOutput {
  double value = 0.0;
  int sign = -1;
};

// Evaluates the test on a full feature vector (all m parent features);
// gathers the selected components itself.
TLUOutput tlu_output(const TLUModel& model, const Eigen::VectorXd& x);

// Error-correction update: the true class's vector gains c*x, the wrongly
// winning class's vector loses c*x. The margin (w_j - w_k) . x grows by
// exactly 2c * x.x.
void error_correct(Eigen::VectorXd& w_j, Eigen::VectorXd& w_k,
                   const Eigen::VectorXd& x, double c);

// Adaptive correction amount c = beta / (beta + k^2) with
// k = (w_j - w_i).x / (2 x.x) + epsilon, where w_j is the winning (wrong)
// vector and w_i the true class's. Output is in (0, 1], shrinking as the
// mistake's margin grows.
double thermal_correction(const Eigen::VectorXd& w_j, const Eigen::VectorXd& w_i,
                          const Eigen::VectorXd& x, double beta, double epsilon);

// What a misclassification resets. standard resets the current run L (the
// usual pocket-with-ratchet behavior); paper_literal instead zeroes the
// pocket run L_P, which makes the very next correct example trigger a
// full-set accuracy evaluation — the documented performance pathology of
// that reading. Model quality is ratcheted identically either way.
enum class ResetMode { standard, paper_literal };

enum class TrainerKind { pocket, thermal };

struct ThermalConfig {
  double beta0 = 2.0;    // initial beta
  double epsilon = 0.5;  // must stay > 0.1
  double a = 0.99;       // beta := a*beta - b when the trigger fires
  double b = 1e-4;

  void validate() const;
};

struct TrainerConfig {
  TrainerKind kind = TrainerKind::pocket;
  // Number of example presentations n_e (one random example per step).
  // 0 means "as many as there are training examples", the reference setting.
  long long epochs = 0;
  double c = 1.0;  // correction amount for the plain pocket trainer
  ResetMode reset_mode = ResetMode::standard;
  ThermalConfig thermal;
};

// Pocket bookkeeping. pocket_weights holds one row per discriminant vector:
// r rows for a linear machine, a single difference row for a binary test.
struct PocketState {
  Eigen::MatrixXd pocket_weights;  // W_P
  long long run_length = 0;        // L, consecutive correct classifications
  long long pocket_run = 0;        // L_P
  double pocket_accuracy = 0.0;    // A_P, never decreases once set
};

struct TrainStats {
  long long iterations = 0;        // examples presented
  long long updates = 0;           // weight adjustments applied
  long long accuracy_checks = 0;   // times the L > L_P gate was passed
  long long full_evaluations = 0;  // full-set accuracy recomputations
  std::vector<double> ap_trace;    // A_P at init and after each replacement
  std::vector<double> beta_trace;  // thermal: beta after each reduction
  double final_beta = 0.0;         // thermal only; 0 for pocket runs
};

// Two-class training problem in difference form. A binary linear machine
// (w_pos, w_neg) classifies by the sign of (w_pos - w_neg) . x, so training
// tracks only that difference w: an error-correction step on example (x, t)
// with t in {+1, -1} becomes w += 2c*t*x.
struct BinaryProblem {
  RowMatrixXd x;                    // n x (s+1), bias column of ones first
  Eigen::VectorXd targets;          // +1 for positive_label, -1 otherwise
  int positive_label = 0;           // dataset label mapped to +1
  int negative_label = 0;           // dataset label mapped to -1
  std::vector<int> feature_indices; // 1-based parent-dataset columns used
};

// Builds the problem from a subset holding exactly the two given classes.
// Empty feature_indices selects every feature. The positive label is the
// output-sign convention: the trained test answers +1 for that class.
BinaryProblem make_binary_problem(const Dataset& pair_data, int positive_label,
                                  int negative_label,
                                  std::vector<int> feature_indices = {});

// The two labels present in a two-class subset, ordered (lower, higher).
// Throws unless exactly two distinct labels occur.
std::pair<int, int> pair_class_labels(const Dataset& pair_data);

// Fraction of examples whose thresholded output matches the target.
double binary_accuracy(const BinaryProblem& problem, const Eigen::VectorXd& w);

struct BinaryTrainResult {
  TLUModel model;  // pocketed weights
  PocketState state;
  TrainStats stats;
};

// Core sequential trainer shared by the pocket and thermal procedures.
// Deterministic: weight init draws from substream "init" of the seed and
// example sampling from substream "train", so supplying an explicit init
// leaves the sampling sequence unchanged. Full-set accuracy is memoized
// between weight updates; stats.full_evaluations counts recomputations.
BinaryTrainResult train_binary(const BinaryProblem& problem,
                               const TrainerConfig& config, std::uint64_t seed,
                               const Eigen::VectorXd* init = nullptr);

// Convenience wrappers over train_binary for a two-class dataset using all
// features; the lower of the two class labels present maps to +1.
BinaryTrainResult pocket_train_binary(const Dataset& pair_data, long long epochs,
                                      double c, std::uint64_t seed,
                                      ResetMode reset_mode = ResetMode::standard);
BinaryTrainResult thermal_train_binary(const Dataset& pair_data,
                                       const ThermalConfig& config, long long epochs,
                                       std::uint64_t seed);

}  // namespace lmtree
