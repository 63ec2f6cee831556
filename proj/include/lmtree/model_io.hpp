#pragma once

#include "lmtree/dataset.hpp"
#include "lmtree/linear_machine.hpp"
#include "lmtree/pairwise.hpp"

#include <map>
#include <string>
#include <vector>

namespace lmtree {

inline constexpr int kModelFormatVersion = 1;

enum class ModelKind { linear_machine, pairwise_ensemble };

// Everything needed to reproduce predictions: the trained weights, the
// feature-space bookkeeping (names, label mapping, normalization), and an
// echo of the training configuration for the record. Serialized as JSON with
// sorted keys and shortest round-trip numbers, so identical models produce
// byte-identical files.
struct SavedModel {
  int format_version = kModelFormatVersion;
  ModelKind kind = ModelKind::pairwise_ensemble;
  int class_count = 0;
  int feature_count = 0;
  std::vector<std::string> feature_names;   // may be empty
  std::vector<long long> label_values;      // class q <-> label_values[q-1]
  NormalizationParams normalization;        // empty vectors = none applied
  LinearMachineModel lm;                    // used when kind == linear_machine
  PairwiseEnsembleModel ensemble;           // used when kind == pairwise_ensemble
  std::map<std::string, std::string> config_echo;

  void validate() const;
};

std::string model_to_string(const SavedModel& model);
SavedModel model_from_string(const std::string& text);

void save_model(const std::string& path, const SavedModel& model);
SavedModel load_model(const std::string& path);

// Applies the stored normalization (when present) and classifies each row,
// returning class indices 1..r.
std::vector<int> predict_classes(const SavedModel& model,
                                 const Eigen::MatrixXd& raw_features);

// The original label value a class index maps back to.
long long label_value_of(const SavedModel& model, int class_index);

}  // namespace lmtree
