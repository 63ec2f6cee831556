#include "lmtree/tlu.hpp"

#include "lmtree/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace lmtree {

void TLUModel::validate() const {
  if (weights.size() != static_cast<Eigen::Index>(feature_indices.size()) + 1)
    throw std::invalid_argument("tlu: weights must hold bias + one per feature");
  if (!weights.allFinite()) throw std::invalid_argument("tlu: non-finite weight");
  std::unordered_set<int> seen;
  for (int idx : feature_indices) {
    if (idx < 1) throw std::invalid_argument("tlu: feature indices are 1-based");
    if (!seen.insert(idx).second)
      throw std::invalid_argument("tlu: duplicate feature index " + std::to_string(idx));
  }
}

TLUOutput tlu_output(const TLUModel& model, const Eigen::VectorXd& x) {
  double value = model.weights[0];
  for (std::size_t k = 0; k < model.feature_indices.size(); ++k) {
    const int idx = model.feature_indices[k];
    if (idx > x.size())
      throw std::out_of_range("tlu: feature index " + std::to_string(idx) +
                              " exceeds input size " + std::to_string(x.size()));
    value += model.weights[static_cast<Eigen::Index>(k) + 1] * x[idx - 1];
  }
  return TLUOutput{value, sign_of(value)};
}

void error_correct(Eigen::VectorXd& w_j, Eigen::VectorXd& w_k,
                   const Eigen::VectorXd& x, double c) {
  if (w_j.size() != w_k.size() || w_j.size() != x.size())
    throw std::invalid_argument("error_correct: vector length mismatch");
  if (!(c > 0.0)) throw std::invalid_argument("error_correct: c must be > 0");
  w_j += c * x;
  w_k -= c * x;
}

double thermal_correction(const Eigen::VectorXd& w_j, const Eigen::VectorXd& w_i,
                          const Eigen::VectorXd& x, double beta, double epsilon) {
  if (w_j.size() != w_i.size() || w_j.size() != x.size())
    throw std::invalid_argument("thermal_correction: vector length mismatch");
  if (!(beta > 0.0)) throw std::invalid_argument("thermal_correction: beta must be > 0");
  const double xx = x.squaredNorm();
  if (xx == 0.0) throw std::invalid_argument("thermal_correction: zero-norm example");
  const double k = (w_j - w_i).dot(x) / (2.0 * xx) + epsilon;
  return beta / (beta + k * k);
}

void ThermalConfig::validate() const {
  if (!(beta0 > 0.0)) throw std::invalid_argument("thermal: beta0 must be > 0");
  if (!(epsilon > 0.1)) throw std::invalid_argument("thermal: epsilon must be > 0.1");
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("thermal: a must be in (0, 1]");
  if (b < 0.0) throw std::invalid_argument("thermal: b must be >= 0");
}

BinaryProblem make_binary_problem(const Dataset& pair_data, int positive_label,
                                  int negative_label,
                                  std::vector<int> feature_indices) {
  if (positive_label == negative_label)
    throw std::invalid_argument("binary problem: classes must differ");
  if (pair_data.size() == 0) throw std::invalid_argument("binary problem: empty data");

  const int m = static_cast<int>(pair_data.feature_count());
  if (feature_indices.empty()) {
    feature_indices.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) feature_indices[static_cast<std::size_t>(j)] = j + 1;
  }
  std::unordered_set<int> seen;
  for (int idx : feature_indices) {
    if (idx < 1 || idx > m)
      throw std::out_of_range("binary problem: feature index " + std::to_string(idx) +
                              " outside 1.." + std::to_string(m));
    if (!seen.insert(idx).second)
      throw std::invalid_argument("binary problem: duplicate feature index");
  }

  BinaryProblem p;
  p.positive_label = positive_label;
  p.negative_label = negative_label;
  p.feature_indices = std::move(feature_indices);

  const auto n = pair_data.size();
  const auto s = static_cast<Eigen::Index>(p.feature_indices.size());
  p.x.resize(n, s + 1);
  p.x.col(0).setOnes();
  for (Eigen::Index k = 0; k < s; ++k)
    p.x.col(k + 1) = pair_data.features.col(p.feature_indices[static_cast<std::size_t>(k)] - 1);

  p.targets.resize(n);
  bool saw_pos = false;
  bool saw_neg = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int q = pair_data.labels[static_cast<std::size_t>(i)];
    if (q == positive_label) {
      p.targets[i] = 1.0;
      saw_pos = true;
    } else if (q == negative_label) {
      p.targets[i] = -1.0;
      saw_neg = true;
    } else {
      throw std::invalid_argument("binary problem: example of class " +
                                  std::to_string(q) + " is neither of the pair");
    }
  }
  if (!saw_pos || !saw_neg)
    throw std::invalid_argument("binary problem: both classes must be present");
  return p;
}

double binary_accuracy(const BinaryProblem& problem, const Eigen::VectorXd& w) {
  const Eigen::ArrayXd values = (problem.x * w).array();
  const auto correct =
      ((values > 0.0) == (problem.targets.array() > 0.0)).count();
  return static_cast<double>(correct) / static_cast<double>(problem.x.rows());
}

BinaryTrainResult train_binary(const BinaryProblem& problem,
                               const TrainerConfig& config, std::uint64_t seed,
                               const Eigen::VectorXd* init) {
  const Eigen::Index n = problem.x.rows();
  const Eigen::Index dim = problem.x.cols();
  if (n == 0) throw std::invalid_argument("train_binary: empty problem");
  if (config.epochs < 0) throw std::invalid_argument("train_binary: negative epochs");
  if (config.kind == TrainerKind::pocket && !(config.c > 0.0))
    throw std::invalid_argument("train_binary: c must be > 0");
  if (config.kind == TrainerKind::thermal) config.thermal.validate();

  Eigen::VectorXd w(dim);
  if (init) {
    if (init->size() != dim)
      throw std::invalid_argument("train_binary: init weight length mismatch");
    w = *init;
  } else {
    Rng init_rng(derive_seed(seed, "init"));
    for (Eigen::Index i = 0; i < dim; ++i) w[i] = init_rng.uniform(-0.5, 0.5);
  }

  const long long n_e = config.epochs > 0 ? config.epochs : static_cast<long long>(n);
  Rng sample_rng(derive_seed(seed, "train"));

  BinaryTrainResult res;
  res.state.pocket_weights.resize(1, dim);
  res.state.pocket_weights.row(0) = w.transpose();

  // Full-set accuracy of the current weights, recomputed lazily: a weight
  // update invalidates the cache, correct steps reuse it.
  double acc = binary_accuracy(problem, w);
  bool acc_valid = true;
  res.stats.full_evaluations = 1;

  // Start the ratchet at the initial weights' true accuracy so that a
  // replacement always means a strict improvement over what we'd return.
  res.state.pocket_accuracy = acc;
  res.stats.ap_trace.push_back(acc);

  double beta = config.thermal.beta0;
  double mag_prev = w.norm();
  bool prev_increased = false;

  long long& L = res.state.run_length;
  long long& L_P = res.state.pocket_run;

  for (long long step = 0; step < n_e; ++step) {
    ++res.stats.iterations;
    const auto idx = static_cast<Eigen::Index>(sample_rng.uniform_index(
        static_cast<std::uint64_t>(n)));
    const double value = problem.x.row(idx).dot(w);
    const double t = problem.targets[idx];
    const bool correct = (value > 0.0) == (t > 0.0);

    if (correct) {
      ++L;
      if (L > L_P) {
        ++res.stats.accuracy_checks;
        if (!acc_valid) {
          acc = binary_accuracy(problem, w);
          acc_valid = true;
          ++res.stats.full_evaluations;
        }
        if (acc > res.state.pocket_accuracy) {
          res.state.pocket_weights.row(0) = w.transpose();
          L_P = L;
          res.state.pocket_accuracy = acc;
          res.stats.ap_trace.push_back(acc);
        }
      }
      continue;
    }

    double c = config.c;
    if (config.kind == TrainerKind::thermal) {
      // Difference form of the correction amount: the winning (wrong) side
      // minus the true side projects onto x as -t * value.
      const double xx = problem.x.row(idx).squaredNorm();
      const double k = -t * value / (2.0 * xx) + config.thermal.epsilon;
      c = beta / (beta + k * k);
    }
    w += (2.0 * c * t) * problem.x.row(idx).transpose();
    ++res.stats.updates;
    acc_valid = false;

    if (config.reset_mode == ResetMode::standard)
      L = 0;
    else
      L_P = 0;

    if (config.kind == TrainerKind::thermal) {
      const double mag = w.norm();
      if (mag < mag_prev && prev_increased) {
        beta = config.thermal.a * beta - config.thermal.b;
        res.stats.beta_trace.push_back(beta);
      }
      prev_increased = mag > mag_prev;
      mag_prev = mag;
      if (beta <= 0.0) break;
    }
  }

  res.stats.final_beta = config.kind == TrainerKind::thermal ? beta : 0.0;
  res.model.weights = res.state.pocket_weights.row(0).transpose();
  res.model.feature_indices = problem.feature_indices;
  res.model.validate();
  return res;
}

std::pair<int, int> pair_class_labels(const Dataset& pair_data) {
  int lo = 0;
  int hi = 0;
  for (int q : pair_data.labels) {
    if (lo == 0) {
      lo = q;
    } else if (q != lo) {
      if (hi == 0)
        hi = q;
      else if (q != hi)
        throw std::invalid_argument("binary training: more than 2 classes present");
    }
  }
  if (lo == 0 || hi == 0)
    throw std::invalid_argument("binary training: need exactly 2 classes");
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

BinaryTrainResult pocket_train_binary(const Dataset& pair_data, long long epochs,
                                      double c, std::uint64_t seed,
                                      ResetMode reset_mode) {
  const auto [lo, hi] = pair_class_labels(pair_data);
  TrainerConfig cfg;
  cfg.kind = TrainerKind::pocket;
  cfg.epochs = epochs;
  cfg.c = c;
  cfg.reset_mode = reset_mode;
  return train_binary(make_binary_problem(pair_data, lo, hi), cfg, seed);
}

BinaryTrainResult thermal_train_binary(const Dataset& pair_data,
                                       const ThermalConfig& config, long long epochs,
                                       std::uint64_t seed) {
  const auto [lo, hi] = pair_class_labels(pair_data);
  TrainerConfig cfg;
  cfg.kind = TrainerKind::thermal;
  cfg.epochs = epochs;
  cfg.thermal = config;
  return train_binary(make_binary_problem(pair_data, lo, hi), cfg, seed);
}

}  // namespace lmtree
