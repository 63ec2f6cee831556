#include "lmtree/feature_select.hpp"

#include "lmtree/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace lmtree {

namespace {

int resolve_max_features(const SFSConfig& config, int m) {
  const int nf = config.max_features > 0
                     ? config.max_features
                     : static_cast<int>(std::ceil(5.0 * m / 6.0));
  if (nf < 1 || nf > m)
    throw std::invalid_argument("feature selection: max_features must be in 1.." +
                                std::to_string(m));
  return nf;
}

void check_config(const SFSConfig& config) {
  if (config.attempts < 1)
    throw std::invalid_argument("feature selection: attempts must be >= 1");
  if (!(config.drop_threshold > 0.0 && config.drop_threshold < 1.0))
    throw std::invalid_argument("feature selection: drop_threshold must be in (0, 1)");
  if (!(config.fit_fraction > 0.0 && config.fit_fraction < 1.0))
    throw std::invalid_argument("feature selection: fit_fraction must be in (0, 1)");
}

struct AttemptContext {
  const Dataset& pool;  // accuracy is judged on all of the pair data
  const Dataset& fit;   // weights are fit on this stratified share
  int pos_label;
  int neg_label;
  const TrainerConfig& trainer;
  std::uint64_t attempt_seed;
  long long training_counter = 0;
  SfsStats* stats;
};

TestCandidate train_candidate(AttemptContext& ctx, const std::vector<int>& features) {
  const std::uint64_t seed = derive_seed(ctx.attempt_seed, "cand",
                                         static_cast<std::uint64_t>(ctx.training_counter++));
  const BinaryProblem fit_problem =
      make_binary_problem(ctx.fit, ctx.pos_label, ctx.neg_label, features);
  BinaryTrainResult trained = train_binary(fit_problem, ctx.trainer, seed);
  ++ctx.stats->trainings;
  ctx.stats->trainer_iterations += trained.stats.iterations;

  const BinaryProblem pool_problem =
      make_binary_problem(ctx.pool, ctx.pos_label, ctx.neg_label, features);
  TestCandidate cand;
  cand.accuracy = binary_accuracy(pool_problem, trained.model.weights);
  cand.tlu = std::move(trained.model);
  cand.feature_count = static_cast<int>(features.size());
  return cand;
}

SfsResult run_attempt(const Dataset& pair_data, const Dataset& fit_data,
                      const SFSConfig& config, int attempt_index) {
  const int m = static_cast<int>(pair_data.feature_count());
  const int max_features = resolve_max_features(config, m);
  const auto [pos, neg] = pair_class_labels(pair_data);

  const std::uint64_t attempt_seed =
      derive_seed(config.seed, "attempt", static_cast<std::uint64_t>(attempt_index));

  std::vector<int> order(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j + 1;
  Rng order_rng(derive_seed(attempt_seed, "order"));
  order_rng.shuffle(order);

  SfsResult res;
  AttemptContext ctx{pair_data, fit_data,     pos, neg,
                     config.trainer, attempt_seed, 0,   &res.stats};

  // Single-feature sweep: the best of the m one-feature tests seeds the search.
  std::optional<TestCandidate> current;
  for (int f : order) {
    TestCandidate cand = train_candidate(ctx, {f});
    if (!current || cand.accuracy > current->accuracy) current = std::move(cand);
  }
  TestCandidate best = *current;  // T_b

  while (current->feature_count < max_features) {
    std::vector<int> unused;
    for (int f : order)
      if (std::find(current->tlu.feature_indices.begin(),
                    current->tlu.feature_indices.end(),
                    f) == current->tlu.feature_indices.end())
        unused.push_back(f);
    if (unused.empty()) break;

    ++res.stats.rounds;
    std::optional<TestCandidate> round_best;
    for (int f : unused) {
      std::vector<int> features = current->tlu.feature_indices;
      features.push_back(f);
      TestCandidate cand = train_candidate(ctx, features);
      if (!round_best || cand.accuracy > round_best->accuracy)
        round_best = std::move(cand);
      if (config.acceptance == SfsAcceptance::first_improvement &&
          round_best->accuracy > current->accuracy)
        break;
    }

    // Strict-improvement acceptance; a round without one means every
    // remaining feature has been tried and rejected.
    if (!(round_best->accuracy > current->accuracy)) break;
    current = std::move(round_best);
    ++res.stats.accepted;
    if (current->accuracy > best.accuracy) best = *current;
    if (current->accuracy < best.accuracy - config.drop_threshold) break;
  }

  res.best = std::move(best);
  return res;
}

Dataset fit_split(const Dataset& pair_data, const SFSConfig& config) {
  SplitSpec spec;
  spec.train_fraction = config.fit_fraction;
  spec.seed = derive_seed(config.seed, "fit");
  return split(pair_data, spec).train;
}

}  // namespace

SfsResult sfs_select(const Dataset& pair_data, const SFSConfig& config) {
  check_config(config);
  if (pair_data.size() == 0)
    throw std::invalid_argument("feature selection: empty data");
  const Dataset fit_data = fit_split(pair_data, config);
  return run_attempt(pair_data, fit_data, config, 0);
}

MultiAttemptResult multi_attempt_select(const Dataset& pair_data,
                                        const SFSConfig& config) {
  check_config(config);
  if (pair_data.size() == 0)
    throw std::invalid_argument("feature selection: empty data");
  // All attempts share the fit split; only the feature order varies.
  const Dataset fit_data = fit_split(pair_data, config);

  MultiAttemptResult out;
  out.attempt_accuracies.reserve(static_cast<std::size_t>(config.attempts));
  for (int k = 0; k < config.attempts; ++k) {
    SfsResult attempt = run_attempt(pair_data, fit_data, config, k);
    out.attempt_accuracies.push_back(attempt.best.accuracy);
    out.stats.trainings += attempt.stats.trainings;
    out.stats.trainer_iterations += attempt.stats.trainer_iterations;
    out.stats.rounds += attempt.stats.rounds;
    out.stats.accepted += attempt.stats.accepted;
    const bool better =
        k == 0 || attempt.best.accuracy > out.best.accuracy ||
        (attempt.best.accuracy == out.best.accuracy &&
         attempt.best.feature_count < out.best.feature_count);
    if (better) {
      out.best = std::move(attempt.best);
      out.winning_attempt = k;
    }
  }
  return out;
}

}  // namespace lmtree
