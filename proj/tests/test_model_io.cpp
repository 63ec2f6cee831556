#include <doctest.h>

#include "lmtree/model_io.hpp"
#include "lmtree/pairwise.hpp"
#include "lmtree/rng.hpp"
#include "lmtree/synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace lmtree;

namespace {

SavedModel trained_ensemble_model(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.classes = 3;
  spec.features = 4;
  spec.examples_per_class = 40;
  spec.overlap = 0.5;
  spec.seed = seed;
  Dataset ds = generate_synthetic(spec);
  NormalizeResult norm = normalize(ds);
  SFSConfig sel;
  sel.trainer.epochs = 300;
  PairwiseTrainResult res = train_pairwise(norm.data, sel, seed);

  SavedModel m;
  m.kind = ModelKind::pairwise_ensemble;
  m.class_count = ds.class_count;
  m.feature_count = static_cast<int>(ds.feature_count());
  m.feature_names = ds.feature_names;
  m.label_values = ds.label_values;
  m.normalization = norm.params;
  m.ensemble = res.model;
  m.config_echo["trainer"] = "pocket";
  m.config_echo["seed"] = std::to_string(seed);
  m.validate();
  return m;
}

SavedModel small_lm_model() {
  SavedModel m;
  m.kind = ModelKind::linear_machine;
  m.class_count = 3;
  m.feature_count = 2;
  m.label_values = {10, 20, 30};
  m.lm.weights.resize(3, 3);
  m.lm.weights << 0.5, -1.25, 2.0, 0.1, 0.3, -0.7, 0.0, 1.0 / 3.0, 1e-12;
  m.validate();
  return m;
}

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("string round-trip preserves an ensemble model exactly") {
  SavedModel m = trained_ensemble_model(5);
  const std::string text = model_to_string(m);
  SavedModel back = model_from_string(text);

  CHECK(back.format_version == m.format_version);
  CHECK(back.kind == m.kind);
  CHECK(back.class_count == m.class_count);
  CHECK(back.feature_count == m.feature_count);
  CHECK(back.feature_names == m.feature_names);
  CHECK(back.label_values == m.label_values);
  CHECK(back.normalization.mean == m.normalization.mean);
  CHECK(back.normalization.scale == m.normalization.scale);
  CHECK(back.config_echo == m.config_echo);
  REQUIRE(back.ensemble.tests.size() == m.ensemble.tests.size());
  for (std::size_t t = 0; t < m.ensemble.tests.size(); ++t) {
    CHECK(back.ensemble.tests[t].class_i == m.ensemble.tests[t].class_i);
    CHECK(back.ensemble.tests[t].class_j == m.ensemble.tests[t].class_j);
    CHECK(back.ensemble.tests[t].tlu.weights == m.ensemble.tests[t].tlu.weights);
    CHECK(back.ensemble.tests[t].tlu.feature_indices ==
          m.ensemble.tests[t].tlu.feature_indices);
    CHECK(back.ensemble.tests[t].training_error ==
          m.ensemble.tests[t].training_error);
  }
}

TEST_CASE("serialization is canonical: same model, same bytes") {
  SavedModel m = trained_ensemble_model(7);
  const std::string once = model_to_string(m);
  const std::string twice = model_to_string(m);
  CHECK(once == twice);
  // parse -> serialize is a fixed point
  CHECK(model_to_string(model_from_string(once)) == once);
  // trailing newline, pretty-printed
  REQUIRE(!once.empty());
  CHECK(once.back() == '\n');
}

TEST_CASE("loaded models predict identically to the in-memory original") {
  SavedModel m = trained_ensemble_model(9);
  SavedModel back = model_from_string(model_to_string(m));
  Rng rng(99);
  Eigen::MatrixXd probes(1000, m.feature_count);
  for (int i = 0; i < probes.rows(); ++i)
    for (int j = 0; j < probes.cols(); ++j) probes(i, j) = rng.uniform(-6.0, 6.0);
  CHECK(predict_classes(m, probes) == predict_classes(back, probes));
}

TEST_CASE("linear machine round-trip, including awkward doubles") {
  SavedModel m = small_lm_model();
  SavedModel back = model_from_string(model_to_string(m));
  CHECK(back.kind == ModelKind::linear_machine);
  CHECK(back.lm.weights == m.lm.weights);  // 1/3 and 1e-12 survive exactly
  CHECK(back.label_values == m.label_values);

  Rng rng(98);
  Eigen::MatrixXd probes(200, 2);
  for (int i = 0; i < 200; ++i) {
    probes(i, 0) = rng.uniform(-3.0, 3.0);
    probes(i, 1) = rng.uniform(-3.0, 3.0);
  }
  CHECK(predict_classes(m, probes) == predict_classes(back, probes));
}

TEST_CASE("file save and load, byte-identical on re-save") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lmtree_model_io_test";
  fs::create_directories(dir);
  const std::string p1 = (dir / "a.json").string();
  const std::string p2 = (dir / "b.json").string();

  SavedModel m = trained_ensemble_model(11);
  save_model(p1, m);
  SavedModel back = load_model(p1);
  save_model(p2, back);

  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  const std::string bytes1((std::istreambuf_iterator<char>(f1)),
                           std::istreambuf_iterator<char>());
  const std::string bytes2((std::istreambuf_iterator<char>(f2)),
                           std::istreambuf_iterator<char>());
  CHECK(bytes1 == bytes2);
  CHECK(!bytes1.empty());

  fs::remove_all(dir);
  CHECK_THROWS(load_model((dir / "missing.json").string()));
}

TEST_CASE("unsupported format versions are rejected") {
  SavedModel m = small_lm_model();
  std::string text = model_to_string(m);
  const std::string needle = "\"format_version\": 1";
  const std::size_t at = text.find(needle);
  REQUIRE(at != std::string::npos);
  text.replace(at, needle.size(), "\"format_version\": 2");
  CHECK_THROWS_WITH_AS(model_from_string(text),
                       doctest::Contains("format_version"), std::runtime_error);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS(model_from_string("not json"));
  CHECK_THROWS(model_from_string("{}"));

  SavedModel m = small_lm_model();
  std::string text = model_to_string(m);
  // unknown kind string
  std::string broken = text;
  const std::size_t at = broken.find("\"linear_machine\"");
  REQUIRE(at != std::string::npos);
  broken.replace(at, 16, "\"quadratic_farm\"");
  CHECK_THROWS(model_from_string(broken));
}

TEST_CASE("validate rejects inconsistent models") {
  SavedModel m = small_lm_model();
  m.class_count = 4;  // weights say 3
  CHECK_THROWS(m.validate());

  SavedModel e = trained_ensemble_model(13);
  e.feature_count = 1;  // tests reference features beyond this
  CHECK_THROWS(e.validate());

  SavedModel v = small_lm_model();
  v.label_values = {1, 2};  // wrong length
  CHECK_THROWS(v.validate());
}

TEST_CASE("stored normalization is applied before classification") {
  SavedModel m = small_lm_model();
  m.normalization.mean = Eigen::Vector2d(5.0, -3.0);
  m.normalization.scale = Eigen::Vector2d(2.0, 4.0);
  m.validate();

  Rng rng(97);
  Eigen::MatrixXd raw(50, 2);
  for (int i = 0; i < 50; ++i) {
    raw(i, 0) = rng.uniform(0.0, 10.0);
    raw(i, 1) = rng.uniform(-6.0, 0.0);
  }
  const std::vector<int> via_model = predict_classes(m, raw);
  // manual z-scoring against a normalization-free copy
  SavedModel plain = small_lm_model();
  Eigen::MatrixXd z = raw;
  z.col(0) = (raw.col(0).array() - 5.0) / 2.0;
  z.col(1) = (raw.col(1).array() + 3.0) / 4.0;
  CHECK(via_model == predict_classes(plain, z));
}

TEST_CASE("label mapping helper") {
  SavedModel m = small_lm_model();
  CHECK(label_value_of(m, 1) == 10);
  CHECK(label_value_of(m, 3) == 30);
  CHECK_THROWS(label_value_of(m, 0));
  CHECK_THROWS(label_value_of(m, 4));
}

}  // TEST_SUITE
