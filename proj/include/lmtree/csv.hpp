#pragma once

#include "lmtree/dataset.hpp"

#include <iosfwd>
#include <string>

namespace lmtree {

// How to interpret the CSV header. label_column must name an integer column;
// recording_column is optional ("" = none). Every other column is a numeric
// feature, kept in header order.
struct CsvSchema {
  std::string label_column = "label";
  std::string recording_column;
};

// Parses a headered CSV into a Dataset. Strict: ragged rows, a missing label
// column, or non-numeric feature cells throw std::runtime_error with the
// 1-based line number. Quotes are not interpreted; fields are split on bare
// commas (the writers below never emit quoted fields).
Dataset load_csv(const std::string& path, const CsvSchema& schema = {});
Dataset read_csv(std::istream& in, const CsvSchema& schema,
                 const std::string& origin = "<stream>");

// Feature rows for prediction: the label column is optional here (labels is
// filled and has_labels set when it exists); everything else parses as in
// load_csv.
struct FeatureTable {
  Eigen::MatrixXd features;
  std::vector<std::string> feature_names;
  std::vector<std::string> recording_ids;  // empty unless a column was declared
  std::vector<long long> labels;
  bool has_labels = false;
};

FeatureTable load_feature_csv(const std::string& path, const CsvSchema& schema = {});
FeatureTable read_feature_csv(std::istream& in, const CsvSchema& schema,
                              const std::string& origin = "<stream>");

// Writes header + rows. Doubles use shortest-round-trip formatting, so a
// load_csv of the output reproduces the values bit for bit.
void write_csv(const std::string& path, const Dataset& ds,
               const CsvSchema& schema = {});
void write_csv(std::ostream& out, const Dataset& ds, const CsvSchema& schema = {});

// Shortest decimal string that parses back to exactly this double.
std::string format_double(double value);

}  // namespace lmtree
