#include "lmtree/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>

namespace {

void add_synth_flags(CLI::App* cmd, lmtree::SynthFlags& flags) {
  cmd->add_option("--classes", flags.classes, "number of classes")
      ->capture_default_str();
  cmd->add_option("--features", flags.features, "total feature count")
      ->capture_default_str();
  cmd->add_option("--noise-features", flags.noise_features,
                  "how many trailing features carry no class information")
      ->capture_default_str();
  cmd->add_option("--per-class", flags.per_class, "examples per class")
      ->capture_default_str();
  cmd->add_option("--overlap", flags.overlap,
                  "class overlap >= 0; higher pulls the class centers together")
      ->capture_default_str();
  cmd->add_option("--recordings-per-class", flags.recordings_per_class,
                  "cut each class into this many recordings (0 = none)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise linear-test ensembles: train, predict, analyze, synth"};
  app.require_subcommand(1);

  lmtree::TrainOptions train;
  CLI::App* t = app.add_subcommand("train", "train a classifier and save the model");
  t->add_option("--data", train.data, "training CSV path");
  t->add_flag("--synth", train.use_synth, "train on generated data instead of --data");
  add_synth_flags(t, train.synth);
  t->add_option("--label-col", train.label_column, "label column name")
      ->capture_default_str();
  t->add_option("--recording-col", train.recording_column,
                "recording id column name");
  t->add_option("--seed", train.seed, "master seed for every random choice")
      ->envname("LMTREE_SEED")
      ->capture_default_str();
  t->add_option("--jobs", train.jobs, "concurrent pairwise trainings")
      ->capture_default_str();
  t->add_option("--model", train.model_kind, "model kind")
      ->check(CLI::IsMember({"pairwise", "lm"}))
      ->capture_default_str();
  t->add_option("--trainer", train.trainer, "weight trainer (pairwise only: thermal)")
      ->check(CLI::IsMember({"pocket", "thermal"}))
      ->capture_default_str();
  t->add_option("--epochs", train.epochs,
                "example presentations per training (0 = training-set size)")
      ->capture_default_str();
  t->add_option("--c", train.c, "correction amount for the pocket trainer")
      ->capture_default_str();
  t->add_option("--nf", train.nf, "max features per test (0 = ceil(5m/6))")
      ->capture_default_str();
  t->add_option("--nt", train.nt, "feature-selection attempts per test")
      ->capture_default_str();
  t->add_option("--drop-threshold", train.drop_threshold,
                "stop selection when accuracy falls this far below the best")
      ->capture_default_str();
  t->add_option("--fit-fraction", train.fit_fraction,
                "share of pair data candidate weights are fit on")
      ->capture_default_str();
  t->add_option("--train-fraction", train.train_fraction,
                "share of the data used for training (rest evaluates)")
      ->capture_default_str();
  t->add_flag("--group-split", train.group_split,
              "keep whole recordings on one side of the split");
  t->add_option("--reset-mode", train.reset_mode,
                "what a misclassification resets")
      ->check(CLI::IsMember({"standard", "paper-literal"}))
      ->capture_default_str();
  t->add_flag("--first-improvement", train.first_improvement,
              "accept the first improving feature instead of the round's best");
  t->add_option("--beta0", train.beta0, "thermal: initial beta")->capture_default_str();
  t->add_option("--epsilon", train.epsilon, "thermal: margin offset (> 0.1)")
      ->capture_default_str();
  t->add_option("--a", train.a, "thermal: beta decay factor")->capture_default_str();
  t->add_option("--b", train.b, "thermal: beta decay offset")->capture_default_str();
  t->add_option("--out", train.out, "model file path")->capture_default_str();
  t->add_option("--report", train.report, "write metrics CSV here");
  t->callback([&train] { lmtree::run_train(train, std::cout); });

  lmtree::PredictOptions predict;
  CLI::App* p = app.add_subcommand("predict", "classify rows with a saved model");
  p->add_option("--model", predict.model, "model file path")->required();
  p->add_option("--data", predict.data, "feature CSV path (label column optional)")
      ->required();
  p->add_option("--label-col", predict.label_column, "label column name")
      ->capture_default_str();
  p->add_option("--recording-col", predict.recording_column,
                "recording id column name");
  p->add_option("--out", predict.out, "per-row predictions CSV (default stdout)");
  p->add_option("--recording-out", predict.recording_out,
                "per-recording vote summary CSV (default stdout)");
  p->callback([&predict] { lmtree::run_predict(predict, std::cout); });

  lmtree::AnalyzeOptions analyze;
  CLI::App* a = app.add_subcommand("analyze", "feature significance and 3-sigma bands");
  a->add_option("--data", analyze.data, "labeled CSV path")->required();
  a->add_option("--label-col", analyze.label_column, "label column name")
      ->capture_default_str();
  a->add_option("--recording-col", analyze.recording_column,
                "recording id column name");
  a->add_option("--alpha", analyze.alpha, "significance scale coefficient")
      ->capture_default_str();
  a->add_option("--out", analyze.out, "significance CSV (default stdout)");
  a->add_option("--feature", analyze.feature,
                "also emit the per-class 3-sigma table of this feature (1-based)");
  a->add_option("--sigma-out", analyze.sigma_out, "3-sigma CSV (default stdout)");
  a->callback([&analyze] { lmtree::run_analyze(analyze, std::cout); });

  lmtree::SynthCmdOptions synth;
  CLI::App* s = app.add_subcommand("synth", "generate a synthetic dataset CSV");
  add_synth_flags(s, synth.synth);
  s->add_option("--seed", synth.seed, "generator seed")
      ->envname("LMTREE_SEED")
      ->capture_default_str();
  s->add_option("--label-col", synth.label_column, "label column name")
      ->capture_default_str();
  s->add_option("--recording-col", synth.recording_column,
                "recording id column name (with --recordings-per-class)");
  s->add_option("--out", synth.out, "output CSV path")->required();
  s->callback([&synth] { lmtree::run_synth(synth); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
