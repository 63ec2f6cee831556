#include "lmtree/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lmtree {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const json& x : arr) v[i++] = x.get<double>();
  return v;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  if (r == 0) return Eigen::MatrixXd();
  const auto c = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(r, c);
  Eigen::Index i = 0;
  for (const json& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c)
      throw std::runtime_error("model file: ragged weight matrix");
    m.row(i++) = vector_from_json(row).transpose();
  }
  return m;
}

std::string kind_name(ModelKind kind) {
  return kind == ModelKind::linear_machine ? "linear_machine" : "pairwise_ensemble";
}

ModelKind kind_from_name(const std::string& name) {
  if (name == "linear_machine") return ModelKind::linear_machine;
  if (name == "pairwise_ensemble") return ModelKind::pairwise_ensemble;
  throw std::runtime_error("model file: unknown kind '" + name + "'");
}

}  // namespace

void SavedModel::validate() const {
  if (format_version != kModelFormatVersion)
    throw std::runtime_error("model file: unsupported format_version " +
                             std::to_string(format_version));
  if (class_count < 2 || feature_count < 1)
    throw std::runtime_error("model file: bad class or feature count");
  if (label_values.size() != static_cast<std::size_t>(class_count))
    throw std::runtime_error("model file: label_values/class_count mismatch");
  if (!feature_names.empty() &&
      feature_names.size() != static_cast<std::size_t>(feature_count))
    throw std::runtime_error("model file: feature_names/feature_count mismatch");
  if (normalization.mean.size() != normalization.scale.size())
    throw std::runtime_error("model file: normalization mean/scale mismatch");
  if (normalization.mean.size() != 0 && normalization.mean.size() != feature_count)
    throw std::runtime_error("model file: normalization width mismatch");
  if (kind == ModelKind::linear_machine) {
    lm.validate();
    if (lm.class_count() != class_count || lm.feature_count() != feature_count)
      throw std::runtime_error("model file: linear machine shape mismatch");
  } else {
    ensemble.validate();
    if (ensemble.class_count != class_count)
      throw std::runtime_error("model file: ensemble class count mismatch");
    for (const PairwiseTest& t : ensemble.tests)
      for (int idx : t.tlu.feature_indices)
        if (idx > feature_count)
          throw std::runtime_error("model file: test uses out-of-range feature");
  }
}

std::string model_to_string(const SavedModel& model) {
  model.validate();
  json j;
  j["format_version"] = model.format_version;
  j["kind"] = kind_name(model.kind);
  j["classes"] = model.class_count;
  j["features"] = model.feature_count;
  j["feature_names"] = model.feature_names;
  j["label_values"] = model.label_values;
  if (model.normalization.mean.size() > 0) {
    j["normalization"] = {{"mean", vector_to_json(model.normalization.mean)},
                          {"scale", vector_to_json(model.normalization.scale)}};
  } else {
    j["normalization"] = nullptr;
  }
  j["config"] = model.config_echo;
  if (model.kind == ModelKind::linear_machine) {
    j["linear_machine"] = {{"weights", matrix_to_json(model.lm.weights)}};
  } else {
    json tests = json::array();
    for (const PairwiseTest& t : model.ensemble.tests) {
      tests.push_back({{"class_i", t.class_i},
                       {"class_j", t.class_j},
                       {"feature_indices", t.tlu.feature_indices},
                       {"weights", vector_to_json(t.tlu.weights)},
                       {"training_error", t.training_error},
                       {"feature_count", t.feature_count}});
    }
    j["tests"] = std::move(tests);
  }
  return j.dump(2) + "\n";
}

SavedModel model_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("model file: not valid JSON: ") + e.what());
  }
  SavedModel m;
  m.format_version = j.at("format_version").get<int>();
  if (m.format_version != kModelFormatVersion)
    throw std::runtime_error("model file: unsupported format_version " +
                             std::to_string(m.format_version));
  m.kind = kind_from_name(j.at("kind").get<std::string>());
  m.class_count = j.at("classes").get<int>();
  m.feature_count = j.at("features").get<int>();
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  m.label_values = j.at("label_values").get<std::vector<long long>>();
  if (!j.at("normalization").is_null()) {
    m.normalization.mean = vector_from_json(j.at("normalization").at("mean"));
    m.normalization.scale = vector_from_json(j.at("normalization").at("scale"));
  }
  m.config_echo = j.at("config").get<std::map<std::string, std::string>>();
  if (m.kind == ModelKind::linear_machine) {
    m.lm.weights = matrix_from_json(j.at("linear_machine").at("weights"));
  } else {
    m.ensemble.class_count = m.class_count;
    for (const json& t : j.at("tests")) {
      PairwiseTest test;
      test.class_i = t.at("class_i").get<int>();
      test.class_j = t.at("class_j").get<int>();
      test.tlu.feature_indices = t.at("feature_indices").get<std::vector<int>>();
      test.tlu.weights = vector_from_json(t.at("weights"));
      test.training_error = t.at("training_error").get<double>();
      test.feature_count = t.at("feature_count").get<int>();
      m.ensemble.tests.push_back(std::move(test));
    }
  }
  m.validate();
  return m;
}

void save_model(const std::string& path, const SavedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << model_to_string(model);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

SavedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_string(buf.str());
}

std::vector<int> predict_classes(const SavedModel& model,
                                 const Eigen::MatrixXd& raw_features) {
  if (raw_features.cols() != model.feature_count)
    throw std::invalid_argument("predict: model expects " +
                                std::to_string(model.feature_count) +
                                " features, input has " +
                                std::to_string(raw_features.cols()));
  const Eigen::MatrixXd features = model.normalization.mean.size() > 0
                                       ? model.normalization.apply(raw_features)
                                       : raw_features;
  if (model.kind == ModelKind::linear_machine)
    return lm_classify_batch(model.lm, features);
  return classify_batch(model.ensemble, features);
}

long long label_value_of(const SavedModel& model, int class_index) {
  if (class_index < 1 || class_index > model.class_count)
    throw std::out_of_range("label_value_of: class outside 1.." +
                            std::to_string(model.class_count));
  return model.label_values[static_cast<std::size_t>(class_index - 1)];
}

}  // namespace lmtree
