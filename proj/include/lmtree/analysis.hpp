#pragma once

#include "lmtree/dataset.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace lmtree {

// Per-feature class-separability measure: significance[j] is
// alpha * v_j / sum_i s_ij, where v_j is the variance of the r class means
// around their own mean (all classes weighted equally) and s_ij is class i's
// population variance of the feature. Degenerate features: zero within-class
// spread yields +infinity when the class means differ and 0 when everything
// is constant.
struct SignificanceReport {
  double alpha = 100.0;
  Eigen::VectorXd between_class_variance;  // v, length m
  Eigen::VectorXd within_variance_sum;     // sum over classes of s_i, length m
  Eigen::VectorXd significance;            // d, length m
  std::vector<int> ranking;   // feature indices 1..m, most significant first
  Eigen::MatrixXd class_means;  // r x m
  Eigen::MatrixXd class_sds;    // r x m, population convention
};

SignificanceReport significance(const Dataset& ds, double alpha = 100.0);

// One class's mean +/- 3 sigma band for a single feature.
struct ThreeSigmaRow {
  int class_index = 0;        // 1..r
  long long label_value = 0;  // the class's original label
  double mean = 0.0;
  double lo = 0.0;  // mean - 3 sigma
  double hi = 0.0;  // mean + 3 sigma
};

// feature is 1-based.
std::vector<ThreeSigmaRow> three_sigma_table(const Dataset& ds, int feature);

// CSV: feature,v,sum_s,d,rank (rank 1 = most significant).
void write_significance_csv(std::ostream& out, const SignificanceReport& report);
void write_significance_csv(const std::string& path, const SignificanceReport& report);

// CSV: class,label,mean,lo,hi.
void write_three_sigma_csv(std::ostream& out, const std::vector<ThreeSigmaRow>& rows);
void write_three_sigma_csv(const std::string& path,
                           const std::vector<ThreeSigmaRow>& rows);

}  // namespace lmtree
