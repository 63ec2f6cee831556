#include "lmtree/analysis.hpp"

#include "lmtree/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lmtree {

SignificanceReport significance(const Dataset& ds, double alpha) {
  ds.validate();
  if (!(alpha > 0.0)) throw std::invalid_argument("significance: alpha must be > 0");
  const int r = ds.class_count;
  const Eigen::Index m = ds.feature_count();

  SignificanceReport rep;
  rep.alpha = alpha;
  rep.class_means.resize(r, m);
  rep.class_sds.resize(r, m);

  for (int q = 1; q <= r; ++q) {
    const std::vector<Eigen::Index> rows = class_rows(ds, q);
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(m);
    for (Eigen::Index i : rows) mean += ds.features.row(i);
    mean /= static_cast<double>(rows.size());
    Eigen::RowVectorXd var = Eigen::RowVectorXd::Zero(m);
    for (Eigen::Index i : rows)
      var += (ds.features.row(i) - mean).array().square().matrix();
    var /= static_cast<double>(rows.size());
    rep.class_means.row(q - 1) = mean;
    rep.class_sds.row(q - 1) = var.array().sqrt();
  }

  // v: variance of the class means around their unweighted mean. Classes
  // count equally here regardless of how many examples each one has.
  const Eigen::RowVectorXd grand = rep.class_means.colwise().mean();
  rep.between_class_variance =
      ((rep.class_means.rowwise() - grand).array().square().colwise().sum() /
       static_cast<double>(r))
          .matrix()
          .transpose();
  rep.within_variance_sum =
      rep.class_sds.array().square().colwise().sum().matrix().transpose();

  rep.significance.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double v = rep.between_class_variance[j];
    const double s = rep.within_variance_sum[j];
    if (s > 0.0)
      rep.significance[j] = alpha * v / s;
    else
      rep.significance[j] = v > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }

  rep.ranking.resize(static_cast<std::size_t>(m));
  std::iota(rep.ranking.begin(), rep.ranking.end(), 1);
  std::stable_sort(rep.ranking.begin(), rep.ranking.end(), [&](int a, int b) {
    return rep.significance[a - 1] > rep.significance[b - 1];
  });
  return rep;
}

std::vector<ThreeSigmaRow> three_sigma_table(const Dataset& ds, int feature) {
  ds.validate();
  if (feature < 1 || feature > ds.feature_count())
    throw std::out_of_range("three_sigma_table: feature " + std::to_string(feature) +
                            " outside 1.." + std::to_string(ds.feature_count()));
  std::vector<ThreeSigmaRow> rows;
  rows.reserve(static_cast<std::size_t>(ds.class_count));
  for (int q = 1; q <= ds.class_count; ++q) {
    const std::vector<Eigen::Index> idx = class_rows(ds, q);
    double mean = 0.0;
    for (Eigen::Index i : idx) mean += ds.features(i, feature - 1);
    mean /= static_cast<double>(idx.size());
    double var = 0.0;
    for (Eigen::Index i : idx) {
      const double d = ds.features(i, feature - 1) - mean;
      var += d * d;
    }
    var /= static_cast<double>(idx.size());
    const double sigma = std::sqrt(var);
    rows.push_back(ThreeSigmaRow{q, ds.label_values[static_cast<std::size_t>(q - 1)],
                                 mean, mean - 3.0 * sigma, mean + 3.0 * sigma});
  }
  return rows;
}

void write_significance_csv(std::ostream& out, const SignificanceReport& report) {
  const Eigen::Index m = report.significance.size();
  std::vector<int> rank_of(static_cast<std::size_t>(m));
  for (std::size_t pos = 0; pos < report.ranking.size(); ++pos)
    rank_of[static_cast<std::size_t>(report.ranking[pos] - 1)] =
        static_cast<int>(pos) + 1;
  out << "feature,v,sum_s,d,rank\n";
  for (Eigen::Index j = 0; j < m; ++j)
    out << j + 1 << ',' << format_double(report.between_class_variance[j]) << ','
        << format_double(report.within_variance_sum[j]) << ','
        << format_double(report.significance[j]) << ','
        << rank_of[static_cast<std::size_t>(j)] << '\n';
}

void write_significance_csv(const std::string& path, const SignificanceReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_significance_csv(out, report);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_three_sigma_csv(std::ostream& out, const std::vector<ThreeSigmaRow>& rows) {
  out << "class,label,mean,lo,hi\n";
  for (const ThreeSigmaRow& row : rows)
    out << row.class_index << ',' << row.label_value << ','
        << format_double(row.mean) << ',' << format_double(row.lo) << ','
        << format_double(row.hi) << '\n';
}

void write_three_sigma_csv(const std::string& path,
                           const std::vector<ThreeSigmaRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_three_sigma_csv(out, rows);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace lmtree
