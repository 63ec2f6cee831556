#pragma once

#include "lmtree/pairwise.hpp"
#include "lmtree/synthetic.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lmtree {

// Inline synthetic-data spec shared by `train --synth` and the synth command.
struct SynthFlags {
  int classes = 3;
  int features = 4;
  int noise_features = 0;
  int per_class = 100;
  double overlap = 0.0;
  int recordings_per_class = 0;
};

SyntheticSpec to_spec(const SynthFlags& flags, std::uint64_t seed);

struct TrainOptions {
  std::string data;        // CSV path; empty when training on synthetic data
  bool use_synth = false;  // generate the corpus instead of loading it
  SynthFlags synth;
  std::string label_column = "label";
  std::string recording_column;
  std::uint64_t seed = 1;
  int jobs = 1;

  std::string model_kind = "pairwise";  // pairwise | lm
  std::string trainer = "pocket";       // pocket | thermal (pairwise only)
  long long epochs = 0;                 // per training, 0 = training-set size
  double c = 1.0;
  int nf = 0;  // max features per test, 0 = ceil(5m/6)
  int nt = 1;  // selection attempts per test
  double drop_threshold = 0.10;
  double fit_fraction = 2.0 / 3.0;
  double train_fraction = 2.0 / 3.0;
  bool group_split = false;  // keep whole recordings on one split side
  std::string reset_mode = "standard";  // standard | paper-literal
  bool first_improvement = false;
  double beta0 = 2.0;
  double epsilon = 0.5;
  double a = 0.99;
  double b = 1e-4;

  std::string out = "model.json";
  std::string report;  // optional metrics CSV
};

struct RunReport {
  double train_segment_accuracy = 0.0;
  double test_segment_accuracy = 0.0;
  std::optional<double> train_recording_accuracy;
  std::optional<double> test_recording_accuracy;
  std::vector<PairwiseTest> tests;   // per-test metadata; empty for the lm
  long long trainings = 0;           // trainer invocations (pairwise)
  long long trainer_iterations = 0;  // examples presented across trainings
  double wall_seconds = 0.0;
};

// metric,value rows; per-test error and feature-count rows for ensembles.
void write_report_csv(std::ostream& out, const RunReport& report);

// Trains per the options, writes the model file (and report when asked),
// prints a short summary to `log`, and returns the metrics. Throws on any
// error; writes nothing on failure paths before training completes.
RunReport run_train(const TrainOptions& options, std::ostream& log);

struct PredictOptions {
  std::string model;  // model file path
  std::string data;   // feature CSV (label column optional)
  std::string label_column = "label";
  std::string recording_column;
  std::string out;            // per-row CSV; empty = stdout
  std::string recording_out;  // per-recording CSV; empty = stdout when relevant
};

void run_predict(const PredictOptions& options, std::ostream& stdout_stream);

struct AnalyzeOptions {
  std::string data;
  std::string label_column = "label";
  std::string recording_column;
  double alpha = 100.0;
  std::string out;        // significance CSV; empty = stdout
  int feature = 0;        // 1-based; 0 = skip the 3-sigma table
  std::string sigma_out;  // 3-sigma CSV; empty = stdout
};

void run_analyze(const AnalyzeOptions& options, std::ostream& stdout_stream);

struct SynthCmdOptions {
  SynthFlags synth;
  std::uint64_t seed = 1;
  std::string label_column = "label";
  std::string recording_column;  // used when recordings_per_class > 0
  std::string out;               // required
};

void run_synth(const SynthCmdOptions& options);

}  // namespace lmtree
