#include "lmtree/linear_machine.hpp"

#include "lmtree/rng.hpp"

#include <stdexcept>
#include <string>

namespace lmtree {

void LinearMachineModel::validate() const {
  if (weights.rows() < 2)
    throw std::invalid_argument("linear machine: need at least 2 classes");
  if (weights.cols() < 2)
    throw std::invalid_argument("linear machine: need at least 1 feature");
  if (!weights.allFinite())
    throw std::invalid_argument("linear machine: non-finite weight");
}

namespace {

int argmax_lowest(const Eigen::VectorXd& scores) {
  int best = 0;
  for (Eigen::Index j = 1; j < scores.size(); ++j)
    if (scores[j] > scores[best]) best = static_cast<int>(j);
  return best + 1;
}

}  // namespace

Eigen::VectorXd lm_discriminants(const LinearMachineModel& model,
                                 const Eigen::VectorXd& x) {
  if (x.size() != model.feature_count())
    throw std::invalid_argument("linear machine: expected " +
                                std::to_string(model.feature_count()) +
                                " features, got " + std::to_string(x.size()));
  return model.weights.col(0) + model.weights.rightCols(x.size()) * x;
}

int lm_classify(const LinearMachineModel& model, const Eigen::VectorXd& x) {
  return argmax_lowest(lm_discriminants(model, x));
}

std::vector<int> lm_classify_batch(const LinearMachineModel& model,
                                   const Eigen::MatrixXd& features) {
  if (features.cols() != model.feature_count())
    throw std::invalid_argument("linear machine: feature count mismatch");
  // scores(i, j) = g_j(x_i)
  Eigen::MatrixXd scores = features * model.weights.rightCols(features.cols()).transpose();
  scores.rowwise() += model.weights.col(0).transpose();
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  for (Eigen::Index i = 0; i < features.rows(); ++i)
    out[static_cast<std::size_t>(i)] = argmax_lowest(scores.row(i).transpose());
  return out;
}

double lm_accuracy(const LinearMachineModel& model, const Dataset& data) {
  const std::vector<int> pred = lm_classify_batch(model, data.features);
  Eigen::Index correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred[i] == data.labels[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(pred.size());
}

namespace {

// Full-set accuracy of candidate weights W against biased rows Xb.
double batch_accuracy(const Eigen::MatrixXd& W, const RowMatrixXd& xb,
                      const std::vector<int>& labels) {
  const Eigen::MatrixXd scores = xb * W.transpose();  // n x r
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i)
    if (argmax_lowest(scores.row(i).transpose()) == labels[static_cast<std::size_t>(i)])
      ++correct;
  return static_cast<double>(correct) / static_cast<double>(scores.rows());
}

}  // namespace

LmTrainResult lm_pocket_train(const Dataset& data, long long epochs, double c,
                              std::uint64_t seed, ResetMode reset_mode,
                              const Eigen::MatrixXd* init) {
  data.validate();
  if (epochs < 0) throw std::invalid_argument("lm_pocket_train: negative epochs");
  if (!(c > 0.0)) throw std::invalid_argument("lm_pocket_train: c must be > 0");

  const Eigen::Index n = data.size();
  const Eigen::Index dim = data.feature_count() + 1;
  const int r = data.class_count;
  const RowMatrixXd xb = with_bias(data.features);

  Eigen::MatrixXd w(r, dim);
  if (init) {
    if (init->rows() != r || init->cols() != dim)
      throw std::invalid_argument("lm_pocket_train: init weight shape mismatch");
    w = *init;
  } else {
    Rng init_rng(derive_seed(seed, "init"));
    for (Eigen::Index j = 0; j < w.rows(); ++j)
      for (Eigen::Index k = 0; k < w.cols(); ++k) w(j, k) = init_rng.uniform(-0.5, 0.5);
  }

  const long long n_e = epochs > 0 ? epochs : static_cast<long long>(n);
  Rng sample_rng(derive_seed(seed, "train"));

  LmTrainResult res;
  res.state.pocket_weights = w;

  double acc = batch_accuracy(w, xb, data.labels);
  bool acc_valid = true;
  res.stats.full_evaluations = 1;
  res.state.pocket_accuracy = acc;
  res.stats.ap_trace.push_back(acc);

  long long& L = res.state.run_length;
  long long& L_P = res.state.pocket_run;

  for (long long step = 0; step < n_e; ++step) {
    ++res.stats.iterations;
    const auto i = static_cast<Eigen::Index>(
        sample_rng.uniform_index(static_cast<std::uint64_t>(n)));
    const Eigen::VectorXd scores = w * xb.row(i).transpose();
    const int winner = argmax_lowest(scores);
    const int truth = data.labels[static_cast<std::size_t>(i)];

    if (winner == truth) {
      ++L;
      if (L > L_P) {
        ++res.stats.accuracy_checks;
        if (!acc_valid) {
          acc = batch_accuracy(w, xb, data.labels);
          acc_valid = true;
          ++res.stats.full_evaluations;
        }
        if (acc > res.state.pocket_accuracy) {
          res.state.pocket_weights = w;
          L_P = L;
          res.state.pocket_accuracy = acc;
          res.stats.ap_trace.push_back(acc);
        }
      }
      continue;
    }

    w.row(truth - 1) += c * xb.row(i);
    w.row(winner - 1) -= c * xb.row(i);
    ++res.stats.updates;
    acc_valid = false;
    if (reset_mode == ResetMode::standard)
      L = 0;
    else
      L_P = 0;
  }

  res.model.weights = res.state.pocket_weights;
  res.model.validate();
  return res;
}

}  // namespace lmtree
