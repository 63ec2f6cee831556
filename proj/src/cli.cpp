#include "lmtree/cli.hpp"

#include "lmtree/analysis.hpp"
#include "lmtree/csv.hpp"
#include "lmtree/linear_machine.hpp"
#include "lmtree/model_io.hpp"
#include "lmtree/rng.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lmtree {

SyntheticSpec to_spec(const SynthFlags& flags, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.classes = flags.classes;
  spec.features = flags.features;
  spec.noise_features = flags.noise_features;
  spec.examples_per_class = flags.per_class;
  spec.overlap = flags.overlap;
  spec.recordings_per_class = flags.recordings_per_class;
  spec.seed = seed;
  return spec;
}

namespace {

CsvSchema make_schema(const std::string& label_column,
                      const std::string& recording_column) {
  CsvSchema schema;
  schema.label_column = label_column;
  schema.recording_column = recording_column;
  return schema;
}

ResetMode parse_reset_mode(const std::string& name) {
  if (name == "standard") return ResetMode::standard;
  if (name == "paper-literal") return ResetMode::paper_literal;
  throw std::invalid_argument("unknown reset mode '" + name +
                              "' (expected standard or paper-literal)");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::map<std::string, std::string> echo_config(const TrainOptions& o) {
  std::map<std::string, std::string> echo;
  echo["model"] = o.model_kind;
  echo["trainer"] = o.trainer;
  echo["epochs"] = std::to_string(o.epochs);
  echo["c"] = format_double(o.c);
  echo["seed"] = std::to_string(o.seed);
  echo["nf"] = std::to_string(o.nf);
  echo["nt"] = std::to_string(o.nt);
  echo["drop_threshold"] = format_double(o.drop_threshold);
  echo["fit_fraction"] = format_double(o.fit_fraction);
  echo["train_fraction"] = format_double(o.train_fraction);
  echo["reset_mode"] = o.reset_mode;
  echo["acceptance"] = o.first_improvement ? "first_improvement" : "best_improvement";
  echo["group_split"] = o.group_split ? "true" : "false";
  if (o.trainer == "thermal") {
    echo["beta0"] = format_double(o.beta0);
    echo["epsilon"] = format_double(o.epsilon);
    echo["a"] = format_double(o.a);
    echo["b"] = format_double(o.b);
  }
  if (o.use_synth) {
    echo["synth_classes"] = std::to_string(o.synth.classes);
    echo["synth_features"] = std::to_string(o.synth.features);
    echo["synth_noise_features"] = std::to_string(o.synth.noise_features);
    echo["synth_per_class"] = std::to_string(o.synth.per_class);
    echo["synth_overlap"] = format_double(o.synth.overlap);
    echo["synth_recordings_per_class"] = std::to_string(o.synth.recordings_per_class);
  } else {
    echo["data"] = o.data;
  }
  return echo;
}

}  // namespace

void write_report_csv(std::ostream& out, const RunReport& report) {
  out << "metric,value\n";
  out << "train_segment_accuracy," << format_double(report.train_segment_accuracy)
      << '\n';
  out << "test_segment_accuracy," << format_double(report.test_segment_accuracy)
      << '\n';
  if (report.train_recording_accuracy)
    out << "train_recording_accuracy," << format_double(*report.train_recording_accuracy)
        << '\n';
  if (report.test_recording_accuracy)
    out << "test_recording_accuracy," << format_double(*report.test_recording_accuracy)
        << '\n';
  out << "trainings," << report.trainings << '\n';
  out << "trainer_iterations," << report.trainer_iterations << '\n';
  out << "wall_seconds," << format_double(report.wall_seconds) << '\n';
  for (const PairwiseTest& t : report.tests) {
    out << "test_" << t.class_i << '_' << t.class_j << "_error,"
        << format_double(t.training_error) << '\n';
    out << "test_" << t.class_i << '_' << t.class_j << "_features,"
        << t.feature_count << '\n';
  }
}

RunReport run_train(const TrainOptions& o, std::ostream& log) {
  const auto started = std::chrono::steady_clock::now();

  if (o.model_kind != "pairwise" && o.model_kind != "lm")
    throw std::invalid_argument("unknown model kind '" + o.model_kind +
                                "' (expected pairwise or lm)");
  if (o.trainer != "pocket" && o.trainer != "thermal")
    throw std::invalid_argument("unknown trainer '" + o.trainer +
                                "' (expected pocket or thermal)");
  if (o.model_kind == "lm" && o.trainer == "thermal")
    throw std::invalid_argument(
        "the thermal trainer applies to pairwise tests only; the lm baseline "
        "trains with the pocket algorithm");
  if (o.use_synth ? !o.data.empty() : o.data.empty())
    throw std::invalid_argument("provide exactly one of --data or --synth");
  const ResetMode reset = parse_reset_mode(o.reset_mode);

  Dataset full = o.use_synth
                     ? generate_synthetic(to_spec(o.synth, o.seed))
                     : load_csv(o.data, make_schema(o.label_column, o.recording_column));
  NormalizeResult norm = normalize(full);

  SplitSpec split_spec;
  split_spec.train_fraction = o.train_fraction;
  split_spec.seed = o.seed;
  split_spec.group_by_recording = o.group_split;
  SplitResult parts = split(norm.data, split_spec);

  TrainerConfig trainer;
  trainer.kind = o.trainer == "thermal" ? TrainerKind::thermal : TrainerKind::pocket;
  trainer.epochs = o.epochs;
  trainer.c = o.c;
  trainer.reset_mode = reset;
  trainer.thermal = ThermalConfig{o.beta0, o.epsilon, o.a, o.b};

  SavedModel saved;
  saved.class_count = full.class_count;
  saved.feature_count = static_cast<int>(full.feature_count());
  saved.feature_names = full.feature_names;
  saved.label_values = full.label_values;
  saved.normalization = norm.params;
  saved.config_echo = echo_config(o);

  RunReport rep;
  if (o.model_kind == "pairwise") {
    SFSConfig selector;
    selector.max_features = o.nf;
    selector.attempts = o.nt;
    selector.drop_threshold = o.drop_threshold;
    selector.fit_fraction = o.fit_fraction;
    selector.acceptance = o.first_improvement ? SfsAcceptance::first_improvement
                                              : SfsAcceptance::best_improvement;
    selector.trainer = trainer;
    PairwiseTrainResult trained = train_pairwise(parts.train, selector, o.seed, o.jobs);

    const EvalResult on_train = evaluate(trained.model, parts.train);
    const EvalResult on_test = evaluate(trained.model, parts.eval);
    rep.train_segment_accuracy = on_train.segment_accuracy;
    rep.test_segment_accuracy = on_test.segment_accuracy;
    rep.train_recording_accuracy = on_train.recording_accuracy;
    rep.test_recording_accuracy = on_test.recording_accuracy;
    rep.tests = trained.model.tests;
    rep.trainings = trained.total.trainings;
    rep.trainer_iterations = trained.total.trainer_iterations;

    saved.kind = ModelKind::pairwise_ensemble;
    saved.ensemble = std::move(trained.model);
    log << "trained pairwise ensemble: " << saved.ensemble.tests.size()
        << " tests over " << saved.class_count << " classes\n";
  } else {
    LmTrainResult trained = lm_pocket_train(parts.train, o.epochs, o.c, o.seed, reset);
    const EvalResult on_train =
        evaluate_predictions(lm_classify_batch(trained.model, parts.train.features),
                             parts.train);
    const EvalResult on_test =
        evaluate_predictions(lm_classify_batch(trained.model, parts.eval.features),
                             parts.eval);
    rep.train_segment_accuracy = on_train.segment_accuracy;
    rep.test_segment_accuracy = on_test.segment_accuracy;
    rep.train_recording_accuracy = on_train.recording_accuracy;
    rep.test_recording_accuracy = on_test.recording_accuracy;
    rep.trainings = 1;
    rep.trainer_iterations = trained.stats.iterations;

    saved.kind = ModelKind::linear_machine;
    saved.lm = std::move(trained.model);
    log << "trained linear machine over " << saved.class_count << " classes\n";
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  save_model(o.out, saved);
  log << "train segment accuracy " << rep.train_segment_accuracy
      << ", test segment accuracy " << rep.test_segment_accuracy << '\n';
  if (rep.train_recording_accuracy && rep.test_recording_accuracy)
    log << "train recording accuracy " << *rep.train_recording_accuracy
        << ", test recording accuracy " << *rep.test_recording_accuracy << '\n';
  log << "model written to " << o.out << '\n';
  if (!o.report.empty()) {
    std::ofstream out = open_output(o.report);
    write_report_csv(out, rep);
    log << "report written to " << o.report << '\n';
  }
  return rep;
}

void run_predict(const PredictOptions& o, std::ostream& stdout_stream) {
  const SavedModel model = load_model(o.model);
  const FeatureTable table =
      load_feature_csv(o.data, make_schema(o.label_column, o.recording_column));
  const std::vector<int> classes = predict_classes(model, table.features);
  const bool with_recordings = !table.recording_ids.empty();

  {
    std::ofstream file;
    std::ostream* out = &stdout_stream;
    if (!o.out.empty()) {
      file = open_output(o.out);
      out = &file;
    }
    if (with_recordings)
      *out << "row,recording,class,label\n";
    else
      *out << "row,class,label\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      *out << i + 1 << ',';
      if (with_recordings) *out << table.recording_ids[i] << ',';
      *out << classes[i] << ',' << label_value_of(model, classes[i]) << '\n';
    }
  }

  if (!with_recordings) return;

  // Per-recording vote summary, recordings in first-appearance order.
  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::string> names;
  std::vector<std::vector<int>> votes;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto [it, fresh] = group_of.emplace(table.recording_ids[i], votes.size());
    if (fresh) {
      names.push_back(table.recording_ids[i]);
      votes.emplace_back();
    }
    votes[it->second].push_back(classes[i]);
  }
  std::ofstream file;
  std::ostream* out = &stdout_stream;
  if (!o.recording_out.empty()) {
    file = open_output(o.recording_out);
    out = &file;
  }
  *out << "recording,segments,class,label,confidence";
  for (int q = 1; q <= model.class_count; ++q) *out << ",n" << q;
  *out << '\n';
  for (std::size_t g = 0; g < votes.size(); ++g) {
    const RecordingDecision d = aggregate_votes(votes[g], model.class_count);
    *out << names[g] << ',' << votes[g].size() << ',' << d.assigned_class << ','
         << label_value_of(model, d.assigned_class) << ','
         << format_double(d.confidence);
    for (long long count : d.class_histogram) *out << ',' << count;
    *out << '\n';
  }
}

void run_analyze(const AnalyzeOptions& o, std::ostream& stdout_stream) {
  const Dataset ds = load_csv(o.data, make_schema(o.label_column, o.recording_column));
  const SignificanceReport report = significance(ds, o.alpha);
  if (o.out.empty())
    write_significance_csv(stdout_stream, report);
  else
    write_significance_csv(o.out, report);

  if (o.feature == 0) return;
  const std::vector<ThreeSigmaRow> rows = three_sigma_table(ds, o.feature);
  if (o.sigma_out.empty())
    write_three_sigma_csv(stdout_stream, rows);
  else
    write_three_sigma_csv(o.sigma_out, rows);
}

void run_synth(const SynthCmdOptions& o) {
  if (o.out.empty()) throw std::invalid_argument("synth: --out is required");
  const Dataset ds = generate_synthetic(to_spec(o.synth, o.seed));
  CsvSchema schema;
  schema.label_column = o.label_column;
  if (o.synth.recordings_per_class > 0)
    schema.recording_column =
        o.recording_column.empty() ? "recording" : o.recording_column;
  write_csv(o.out, ds, schema);
}

}  // namespace lmtree
