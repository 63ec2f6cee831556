#include "lmtree/pairwise.hpp"

#include "lmtree/rng.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace lmtree {

int pair_count(int r) {
  if (r < 2) throw std::invalid_argument("pairwise: need at least 2 classes");
  return r * (r - 1) / 2;
}

int pair_index(int i, int j, int r) {
  if (!(1 <= i && i < j && j <= r))
    throw std::out_of_range("pairwise: bad pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") for r = " + std::to_string(r));
  const int offset = (i - 1) * r - i * (i - 1) / 2;
  return offset + (j - i - 1);
}

void PairwiseEnsembleModel::validate() const {
  if (class_count < 2)
    throw std::invalid_argument("pairwise: need at least 2 classes");
  if (tests.size() != static_cast<std::size_t>(pair_count(class_count)))
    throw std::invalid_argument("pairwise: expected " +
                                std::to_string(pair_count(class_count)) +
                                " tests, have " + std::to_string(tests.size()));
  for (const PairwiseTest& t : tests) {
    if (!(1 <= t.class_i && t.class_i < t.class_j && t.class_j <= class_count))
      throw std::invalid_argument("pairwise: bad test pair");
    if (&t != &tests[static_cast<std::size_t>(
                  pair_index(t.class_i, t.class_j, class_count))])
      throw std::invalid_argument("pairwise: tests out of canonical order");
    t.tlu.validate();
  }
}

Eigen::MatrixXd sign_wiring_matrix(int r) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(r, pair_count(r));
  for (int i = 1; i < r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      const int col = pair_index(i, j, r);
      s(i - 1, col) = 1.0;
      s(j - 1, col) = -1.0;
    }
  return s;
}

Eigen::VectorXd test_signs(const PairwiseEnsembleModel& model,
                           const Eigen::VectorXd& x) {
  Eigen::VectorXd signs(static_cast<Eigen::Index>(model.tests.size()));
  for (std::size_t t = 0; t < model.tests.size(); ++t)
    signs[static_cast<Eigen::Index>(t)] = tlu_output(model.tests[t].tlu, x).sign;
  return signs;
}

Eigen::VectorXd discriminants(const PairwiseEnsembleModel& model,
                              const Eigen::VectorXd& x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(model.class_count);
  for (const PairwiseTest& t : model.tests) {
    const double s = tlu_output(t.tlu, x).sign;
    g[t.class_i - 1] += s;
    g[t.class_j - 1] -= s;
  }
  return g;
}

namespace {

int argmax_lowest(const Eigen::VectorXd& scores) {
  int best = 0;
  for (Eigen::Index j = 1; j < scores.size(); ++j)
    if (scores[j] > scores[best]) best = static_cast<int>(j);
  return best + 1;
}

}  // namespace

int classify(const PairwiseEnsembleModel& model, const Eigen::VectorXd& x) {
  return argmax_lowest(discriminants(model, x));
}

std::vector<int> classify_batch(const PairwiseEnsembleModel& model,
                                const Eigen::MatrixXd& features) {
  const Eigen::Index n = features.rows();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, model.class_count);
  for (const PairwiseTest& t : model.tests) {
    const auto s = static_cast<Eigen::Index>(t.tlu.feature_indices.size());
    Eigen::VectorXd values = Eigen::VectorXd::Constant(n, t.tlu.weights[0]);
    for (Eigen::Index k = 0; k < s; ++k) {
      const int idx = t.tlu.feature_indices[static_cast<std::size_t>(k)];
      if (idx > features.cols())
        throw std::out_of_range("pairwise: test uses feature " + std::to_string(idx) +
                                " but input has " + std::to_string(features.cols()));
      values += t.tlu.weights[k + 1] * features.col(idx - 1);
    }
    const Eigen::ArrayXd sign =
        (values.array() > 0.0).select(Eigen::ArrayXd::Ones(n), -1.0);
    g.col(t.class_i - 1).array() += sign;
    g.col(t.class_j - 1).array() -= sign;
  }
  std::vector<int> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = argmax_lowest(g.row(i).transpose());
  return out;
}

PairwiseTrainResult train_pairwise(const Dataset& data, const SFSConfig& selector,
                                   std::uint64_t seed, int jobs) {
  data.validate();
  if (jobs < 1) throw std::invalid_argument("pairwise: jobs must be >= 1");
  const int r = data.class_count;
  const int n_tests = pair_count(r);

  PairwiseTrainResult res;
  res.model.class_count = r;
  res.model.tests.resize(static_cast<std::size_t>(n_tests));
  res.per_pair.resize(static_cast<std::size_t>(n_tests));

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_tests));
  for (int i = 1; i < r; ++i)
    for (int j = i + 1; j <= r; ++j) pairs.emplace_back(i, j);

  auto train_one = [&](int flat) {
    const auto [i, j] = pairs[static_cast<std::size_t>(flat)];
    const Dataset pair_data = pair_subset(data, i, j);
    if (pair_data.size() == 0)
      throw std::invalid_argument("pairwise: empty subset for pair (" +
                                  std::to_string(i) + ", " + std::to_string(j) + ")");
    SFSConfig cfg = selector;
    cfg.seed = derive_seed(seed, "pair", static_cast<std::uint64_t>(flat));
    MultiAttemptResult sel = multi_attempt_select(pair_data, cfg);

    PairwiseTest& test = res.model.tests[static_cast<std::size_t>(flat)];
    test.class_i = i;
    test.class_j = j;
    test.training_error = 1.0 - sel.best.accuracy;
    test.feature_count = sel.best.feature_count;
    test.tlu = std::move(sel.best.tlu);
    res.per_pair[static_cast<std::size_t>(flat)] = sel.stats;
  };

  if (jobs == 1 || n_tests == 1) {
    for (int flat = 0; flat < n_tests; ++flat) train_one(flat);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      while (true) {
        const int flat = next.fetch_add(1);
        if (flat >= n_tests) return;
        try {
          train_one(flat);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    const int n_threads = std::min(jobs, n_tests);
    threads.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (const SfsStats& s : res.per_pair) {
    res.total.trainings += s.trainings;
    res.total.trainer_iterations += s.trainer_iterations;
    res.total.rounds += s.rounds;
    res.total.accepted += s.accepted;
  }
  res.model.validate();
  return res;
}

RecordingDecision aggregate_votes(const std::vector<int>& predicted, int r) {
  if (predicted.empty())
    throw std::invalid_argument("aggregate: no segments");
  RecordingDecision d;
  d.class_histogram.assign(static_cast<std::size_t>(r), 0);
  for (int q : predicted) {
    if (q < 1 || q > r)
      throw std::out_of_range("aggregate: predicted class " + std::to_string(q) +
                              " outside 1.." + std::to_string(r));
    ++d.class_histogram[static_cast<std::size_t>(q - 1)];
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < d.class_histogram.size(); ++k)
    if (d.class_histogram[k] > d.class_histogram[best]) best = k;
  d.assigned_class = static_cast<int>(best) + 1;
  d.confidence = 100.0 * static_cast<double>(d.class_histogram[best]) /
                 static_cast<double>(predicted.size());
  return d;
}

RecordingDecision aggregate_recording(const PairwiseEnsembleModel& model,
                                      const Eigen::MatrixXd& segments) {
  if (segments.rows() == 0)
    throw std::invalid_argument("aggregate: no segments");
  return aggregate_votes(classify_batch(model, segments), model.class_count);
}

EvalResult evaluate_predictions(const std::vector<int>& predicted,
                                const Dataset& data) {
  if (predicted.size() != static_cast<std::size_t>(data.size()))
    throw std::invalid_argument("evaluate: prediction count mismatch");
  EvalResult res;
  res.segments = static_cast<long long>(predicted.size());
  long long correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == data.labels[i]) ++correct;
  res.segment_accuracy =
      static_cast<double>(correct) / static_cast<double>(predicted.size());

  if (!data.has_recordings()) return res;

  // Group predictions by recording, in first-appearance order.
  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::vector<int>> votes;
  std::vector<int> truth;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    auto [it, fresh] = group_of.emplace(data.recording_ids[i], votes.size());
    if (fresh) {
      votes.emplace_back();
      truth.push_back(data.labels[i]);
    }
    votes[it->second].push_back(predicted[i]);
  }
  long long rec_correct = 0;
  for (std::size_t g = 0; g < votes.size(); ++g)
    if (aggregate_votes(votes[g], data.class_count).assigned_class == truth[g])
      ++rec_correct;
  res.recordings = static_cast<long long>(votes.size());
  res.recording_accuracy =
      static_cast<double>(rec_correct) / static_cast<double>(votes.size());
  return res;
}

EvalResult evaluate(const PairwiseEnsembleModel& model, const Dataset& data) {
  return evaluate_predictions(classify_batch(model, data.features), data);
}

}  // namespace lmtree
