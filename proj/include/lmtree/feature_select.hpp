#pragma once

#include "lmtree/dataset.hpp"
#include "lmtree/tlu.hpp"

#include <cstdint>
#include <vector>

namespace lmtree {

// How a selection round treats its one-feature extensions: train every
// unused feature and accept the best improving candidate, or accept the
// first candidate that improves (skipping the rest of the round).
enum class SfsAcceptance { best_improvement, first_improvement };

struct SFSConfig {
  int max_features = 0;          // N_f; 0 = ceil(5m/6), the documented default ratio
  int attempts = 1;              // N_t, restarts with different feature orders
  double drop_threshold = 0.10;  // stop when a round's accuracy falls this far below the best
  double fit_fraction = 2.0 / 3.0;  // share of the pair data weights are fit on
  SfsAcceptance acceptance = SfsAcceptance::best_improvement;
  TrainerConfig trainer;         // passed through to every candidate training
  std::uint64_t seed = 1;
};

// A trained linear test plus its accuracy on the full selection pool.
struct TestCandidate {
  TLUModel tlu;
  double accuracy = 0.0;  // A on all of pair_data (fit + held-out together)
  int feature_count = 0;
};

struct SfsStats {
  long long trainings = 0;          // trainer invocations
  long long trainer_iterations = 0; // examples presented across all trainings
  long long rounds = 0;             // extension rounds after the single-feature sweep
  long long accepted = 0;           // extensions that improved the incumbent
};

struct SfsResult {
  TestCandidate best;  // T_b: highest pool accuracy seen, fewest features on ties
  SfsStats stats;
};

// Greedy bottom-up selection for one two-class problem. Trains all m
// single-feature tests, then repeatedly extends the incumbent by one unused
// feature, accepting only strict accuracy improvements; the best test seen
// is returned. Weights are always fit on a fit_fraction class-stratified
// split of pair_data while accuracy is measured on all of pair_data. Stops
// at max_features, when a full round yields no improvement (every remaining
// feature tried), or when a round's best accuracy falls more than
// drop_threshold below the best seen. Deterministic per config.seed; the
// feature order is the seed's "order" substream.
SfsResult sfs_select(const Dataset& pair_data, const SFSConfig& config);

struct MultiAttemptResult {
  TestCandidate best;
  SfsStats stats;        // summed over attempts
  int winning_attempt = 0;  // 0-based index of the attempt that produced best
  std::vector<double> attempt_accuracies;  // pool accuracy per attempt, in order
};

// Runs sfs_select config.attempts times, each with a different seeded
// feature order (the fit split stays fixed), and keeps the candidate with
// the highest accuracy; ties prefer fewer features, then the earlier
// attempt. attempts = 1 is exactly sfs_select.
MultiAttemptResult multi_attempt_select(const Dataset& pair_data,
                                        const SFSConfig& config);

}  // namespace lmtree
