#include "lmtree/csv.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <system_error>
#include <vector>

namespace lmtree {

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line_no,
                       const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& origin, std::size_t line_no,
                    std::string_view field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    fail(origin, line_no, "expected a number, got '" + std::string(field) + "'");
  return value;
}

long long parse_label(const std::string& origin, std::size_t line_no,
                      std::string_view field) {
  long long value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    fail(origin, line_no, "expected an integer label, got '" + std::string(field) + "'");
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, ptr);
}

FeatureTable read_feature_csv(std::istream& in, const CsvSchema& schema,
                              const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) fail(origin, 1, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_line(line);
  std::ptrdiff_t label_col = -1;
  std::ptrdiff_t rec_col = -1;
  std::vector<std::size_t> feature_cols;
  FeatureTable table;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == schema.label_column) {
      if (label_col >= 0) fail(origin, 1, "duplicate label column '" + header[j] + "'");
      label_col = static_cast<std::ptrdiff_t>(j);
    } else if (!schema.recording_column.empty() && header[j] == schema.recording_column) {
      if (rec_col >= 0) fail(origin, 1, "duplicate recording column '" + header[j] + "'");
      rec_col = static_cast<std::ptrdiff_t>(j);
    } else {
      feature_cols.push_back(j);
      table.feature_names.push_back(header[j]);
    }
  }
  for (std::size_t a = 0; a < table.feature_names.size(); ++a)
    for (std::size_t b = a + 1; b < table.feature_names.size(); ++b)
      if (table.feature_names[a] == table.feature_names[b])
        fail(origin, 1, "duplicate column '" + table.feature_names[a] + "'");
  if (!schema.recording_column.empty() && rec_col < 0)
    fail(origin, 1,
         "recording column '" + schema.recording_column + "' not found in header");
  if (feature_cols.empty()) fail(origin, 1, "no feature columns in header");
  table.has_labels = label_col >= 0;

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // ignore blank lines (typically the trailing one)
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size())
      fail(origin, line_no,
           "expected " + std::to_string(header.size()) + " fields, got " +
               std::to_string(fields.size()));
    if (label_col >= 0)
      table.labels.push_back(
          parse_label(origin, line_no, fields[static_cast<std::size_t>(label_col)]));
    if (rec_col >= 0)
      table.recording_ids.push_back(fields[static_cast<std::size_t>(rec_col)]);
    std::vector<double> row;
    row.reserve(feature_cols.size());
    for (std::size_t j : feature_cols)
      row.push_back(parse_double(origin, line_no, fields[j]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(origin, line_no, "no data rows");

  table.features.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(feature_cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      table.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return table;
}

FeatureTable load_feature_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_feature_csv(in, schema, path);
}

Dataset read_csv(std::istream& in, const CsvSchema& schema, const std::string& origin) {
  FeatureTable table = read_feature_csv(in, schema, origin);
  if (!table.has_labels)
    fail(origin, 1, "label column '" + schema.label_column + "' not found in header");
  return make_dataset(std::move(table.features), table.labels,
                      std::move(table.recording_ids), std::move(table.feature_names));
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_csv(in, schema, path);
}

void write_csv(std::ostream& out, const Dataset& ds, const CsvSchema& schema) {
  const bool with_rec = !schema.recording_column.empty();
  if (with_rec && !ds.has_recordings())
    throw std::invalid_argument("write_csv: schema names a recording column but the "
                                "dataset has no recording ids");

  out << schema.label_column;
  if (with_rec) out << ',' << schema.recording_column;
  for (Eigen::Index j = 0; j < ds.feature_count(); ++j) {
    out << ',';
    if (!ds.feature_names.empty())
      out << ds.feature_names[static_cast<std::size_t>(j)];
    else
      out << 'f' << j + 1;
  }
  out << '\n';

  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    const int q = ds.labels[static_cast<std::size_t>(i)];
    out << ds.label_values[static_cast<std::size_t>(q - 1)];
    if (with_rec) out << ',' << ds.recording_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < ds.feature_count(); ++j)
      out << ',' << format_double(ds.features(i, j));
    out << '\n';
  }
}

void write_csv(const std::string& path, const Dataset& ds, const CsvSchema& schema) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out, ds, schema);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace lmtree
