#include "lmtree/dataset.hpp"

#include "lmtree/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace lmtree {

LabeledExample Dataset::example(Eigen::Index i) const {
  LabeledExample ex;
  ex.features = features.row(i).transpose();
  ex.label = labels[static_cast<std::size_t>(i)];
  if (has_recordings()) ex.recording_id = recording_ids[static_cast<std::size_t>(i)];
  return ex;
}

void Dataset::validate() const {
  const auto n = features.rows();
  if (labels.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("dataset: labels/features row count mismatch");
  if (!recording_ids.empty() && recording_ids.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("dataset: recording_ids/features row count mismatch");
  if (!feature_names.empty() &&
      feature_names.size() != static_cast<std::size_t>(features.cols()))
    throw std::invalid_argument("dataset: feature_names/features column count mismatch");
  if (class_count < 2) throw std::invalid_argument("dataset: need at least 2 classes");
  if (label_values.size() != static_cast<std::size_t>(class_count))
    throw std::invalid_argument("dataset: label_values/class_count mismatch");
  if (!features.allFinite())
    throw std::invalid_argument("dataset: non-finite feature value");
  std::vector<char> seen(static_cast<std::size_t>(class_count), 0);
  for (int q : labels) {
    if (q < 1 || q > class_count)
      throw std::invalid_argument("dataset: label " + std::to_string(q) +
                                  " outside 1.." + std::to_string(class_count));
    seen[static_cast<std::size_t>(q - 1)] = 1;
  }
  for (int q = 0; q < class_count; ++q)
    if (!seen[static_cast<std::size_t>(q)])
      throw std::invalid_argument("dataset: class " + std::to_string(q + 1) +
                                  " has no examples");
}

Dataset make_dataset(Eigen::MatrixXd features,
                     const std::vector<long long>& raw_labels,
                     std::vector<std::string> recording_ids,
                     std::vector<std::string> feature_names) {
  if (raw_labels.size() != static_cast<std::size_t>(features.rows()))
    throw std::invalid_argument("make_dataset: labels/features row count mismatch");

  // std::map gives the ascending-value ordering for the 1..r remap.
  std::map<long long, int> remap;
  for (long long v : raw_labels) remap.emplace(v, 0);
  int next = 1;
  std::vector<long long> values;
  values.reserve(remap.size());
  for (auto& [value, idx] : remap) {
    idx = next++;
    values.push_back(value);
  }

  Dataset ds;
  ds.features = std::move(features);
  ds.labels.reserve(raw_labels.size());
  for (long long v : raw_labels) ds.labels.push_back(remap.at(v));
  ds.recording_ids = std::move(recording_ids);
  ds.feature_names = std::move(feature_names);
  ds.label_values = std::move(values);
  ds.class_count = static_cast<int>(ds.label_values.size());
  ds.validate();
  return ds;
}

Eigen::MatrixXd NormalizationParams::apply(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != mean.size())
    throw std::invalid_argument("normalize: column count does not match fitted params");
  Eigen::MatrixXd out = rows.rowwise() - mean.transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (scale[j] > 0.0)
      out.col(j) /= scale[j];
    else
      out.col(j).setZero();
  }
  return out;
}

NormalizeResult normalize(const Dataset& ds) {
  const double n = static_cast<double>(ds.features.rows());
  NormalizationParams p;
  p.mean = ds.features.colwise().mean();
  Eigen::MatrixXd centered = ds.features.rowwise() - p.mean.transpose();
  p.scale = (centered.array().square().colwise().sum() / n).sqrt();

  NormalizeResult res;
  res.data = ds;
  res.data.features = p.apply(ds.features);
  res.params = std::move(p);
  return res;
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<Eigen::Index>& rows) {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.features.cols());
  out.labels.reserve(rows.size());
  if (ds.has_recordings()) out.recording_ids.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Eigen::Index r = rows[i];
    if (r < 0 || r >= ds.features.rows())
      throw std::out_of_range("subset: row index out of range");
    out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(r);
    out.labels.push_back(ds.labels[static_cast<std::size_t>(r)]);
    if (ds.has_recordings())
      out.recording_ids.push_back(ds.recording_ids[static_cast<std::size_t>(r)]);
  }
  out.feature_names = ds.feature_names;
  out.label_values = ds.label_values;
  out.class_count = ds.class_count;
  return out;
}

}  // namespace

Dataset subset(const Dataset& ds, const std::vector<Eigen::Index>& rows) {
  return take_rows(ds, rows);
}

std::vector<Eigen::Index> class_rows(const Dataset& ds, int label) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < ds.size(); ++i)
    if (ds.labels[static_cast<std::size_t>(i)] == label) rows.push_back(i);
  return rows;
}

Dataset pair_subset(const Dataset& ds, int class_a, int class_b) {
  if (class_a == class_b)
    throw std::invalid_argument("pair_subset: classes must differ");
  if (class_a < 1 || class_a > ds.class_count || class_b < 1 ||
      class_b > ds.class_count)
    throw std::invalid_argument("pair_subset: classes must be in 1.." +
                                std::to_string(ds.class_count));
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    const int q = ds.labels[static_cast<std::size_t>(i)];
    if (q == class_a || q == class_b) rows.push_back(i);
  }
  return take_rows(ds, rows);
}

SplitResult split(const Dataset& ds, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw std::invalid_argument("split: train_fraction must be in (0, 1)");
  Rng rng(derive_seed(spec.seed, "split"));

  std::vector<Eigen::Index> train_rows;
  std::vector<Eigen::Index> eval_rows;

  if (spec.group_by_recording) {
    if (!ds.has_recordings())
      throw std::invalid_argument("split: group_by_recording needs recording ids");
    // Group rows by recording; a recording's class is its first row's label
    // (recordings are expected to be single-class).
    std::unordered_map<std::string, std::size_t> group_of;
    std::vector<std::vector<Eigen::Index>> group_rows;
    std::vector<int> group_label;
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
      const auto& id = ds.recording_ids[static_cast<std::size_t>(i)];
      auto [it, fresh] = group_of.emplace(id, group_rows.size());
      if (fresh) {
        group_rows.emplace_back();
        group_label.push_back(ds.labels[static_cast<std::size_t>(i)]);
      }
      group_rows[it->second].push_back(i);
    }
    for (int q = 1; q <= ds.class_count; ++q) {
      std::vector<std::size_t> groups;
      for (std::size_t g = 0; g < group_rows.size(); ++g)
        if (group_label[g] == q) groups.push_back(g);
      if (groups.empty()) continue;  // class absent from this subset
      if (groups.size() < 2)
        throw std::invalid_argument("split: class " + std::to_string(q) +
                                    " needs at least 2 recordings to split by recording");
      rng.shuffle(groups);
      auto take = static_cast<std::size_t>(
          std::floor(spec.train_fraction * static_cast<double>(groups.size())));
      take = std::clamp<std::size_t>(take, 1, groups.size() - 1);
      for (std::size_t i = 0; i < groups.size(); ++i) {
        auto& side = i < take ? train_rows : eval_rows;
        for (Eigen::Index r : group_rows[groups[i]]) side.push_back(r);
      }
    }
  } else {
    for (int q = 1; q <= ds.class_count; ++q) {
      std::vector<Eigen::Index> rows = class_rows(ds, q);
      if (rows.empty()) continue;  // class absent from this subset
      if (rows.size() < 2)
        throw std::invalid_argument("split: class " + std::to_string(q) +
                                    " needs at least 2 examples to split");
      rng.shuffle(rows);
      auto take = static_cast<std::size_t>(
          std::floor(spec.train_fraction * static_cast<double>(rows.size())));
      take = std::clamp<std::size_t>(take, 1, rows.size() - 1);
      train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take));
      eval_rows.insert(eval_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end());
    }
  }

  std::sort(train_rows.begin(), train_rows.end());
  std::sort(eval_rows.begin(), eval_rows.end());
  return SplitResult{take_rows(ds, train_rows), take_rows(ds, eval_rows)};
}

RowMatrixXd with_bias(const Eigen::MatrixXd& features) {
  RowMatrixXd out(features.rows(), features.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(features.cols()) = features;
  return out;
}

}  // namespace lmtree
