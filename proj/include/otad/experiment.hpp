#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otad/cip.hpp"
#include "otad/datasets.hpp"
#include "otad/embedding.hpp"
#include "otad/network.hpp"
#include "otad/robustness.hpp"
#include "otad/surrogate.hpp"

namespace otad {

struct DatasetSection {
  std::string source = "synthetic";  // synthetic | idx | csv
  SyntheticSpec synthetic;
  std::string train_images, train_labels, test_images, test_labels;
  std::string csv_path;
  char delimiter = ',';
  std::string target_column;
  double test_fraction = 0.2;
  std::size_t max_train = 0;  // 0 keeps everything
  std::size_t max_test = 0;
};

struct NetworkSection {
  int blocks = 4;
  bool residual = true;
  TrainConfig train;
};

struct DefenseSection {
  std::string kind = "otad";  // frozen-net | otad | otad-surrogate | knn-mean
  int k = 10;
  SmoothnessWindow window;
  std::string metric = "euclidean";  // euclidean | embedding
  ExhaustionPolicy on_exhausted = ExhaustionPolicy::kNearestNeighbor;
  double lipschitz_radius = 0.3;
  int lipschitz_samples = 6;
  std::size_t lipschitz_points = 20;
};

struct SurrogateSection {
  SurrogateTrainConfig train;
};

struct EvaluationSection {
  std::size_t max_samples = 200;
  std::optional<std::uint64_t> sample_seed;  // defaults to the global seed
};

struct SweepSection {
  std::string axis;  // L_minus_l | class_std | alpha_mix
  std::vector<double> values;
};

struct AttentionSection {
  int tokens = 4;
  int model_dim = 8;
  int heads = 2;
  double input_bound = 1.0;
  double param_scale = 0.3;
  std::optional<double> param_bound;
  bool zero_parameters = false;
  int trials = 100;
  int inputs_per_trial = 4;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::string output_dir = "otad_out";
  std::optional<DatasetSection> dataset;
  std::optional<NetworkSection> network;
  DefenseSection defense;
  std::optional<TripletConfig> embedding;
  std::optional<SurrogateSection> surrogate;
  std::vector<AttackConfig> attacks;
  EvaluationSection evaluation;
  std::optional<SweepSection> sweep;
  std::optional<AttentionSection> attention;
};

/// Parses a JSON config. Relative paths resolve against `base_dir`; unknown
/// keys, wrong types and missing input files raise ConfigError naming the field.
ExperimentConfig parse_config(const std::string& json_text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

/// Re-derives every seed that is not pinned explicitly from the global seed.
void apply_seed(ExperimentConfig& cfg, std::uint64_t seed);

struct SplitData {
  Dataset train;
  Dataset test;
};

SplitData load_data(const DatasetSection& section);

/// File locations of one experiment's artifacts.
struct ArtifactPaths {
  std::string dir;
  std::string model() const { return dir + "/model.bin"; }
  std::string atlas() const { return dir + "/atlas.bin"; }
  std::string embedding() const { return dir + "/embedding.bin"; }
  std::string surrogate() const { return dir + "/surrogate.bin"; }
  std::string train_log() const { return dir + "/train_log.jsonl"; }
};

struct TrainOutcome {
  ResidualNet net;
  TransportAtlas atlas;
  TrainReport report;
  double train_accuracy = 0.0;  // NaN for regression
};

/// Trains the network (and the embedding when the metric needs one),
/// extracts the atlas and writes model, atlas and training log.
TrainOutcome cmd_train(const ExperimentConfig& cfg, const ArtifactPaths& paths);

/// Fits the learned solver on leave-one-out atlas queries and writes it.
SurrogateTrainReport cmd_surrogate_train(const ExperimentConfig& cfg, const ArtifactPaths& paths);

/// Evaluates the configured defense under every configured attack. Reports
/// go to `report_dir` as report_<i>_<attack>.json plus summary.csv.
std::vector<MetricsReport> cmd_evaluate(const ExperimentConfig& cfg, const ArtifactPaths& paths,
                                        const std::string& report_dir, int workers);

struct SweepRow {
  double axis_value = 0.0;
  std::optional<double> standard_acc;
  std::optional<double> robust_acc;
  double mean_re = 0.0;
  double lipschitz_estimate = 0.0;
};

/// One evaluation per axis value (first configured attack), aggregated into sweep.csv.
std::vector<SweepRow> cmd_sweep(const ExperimentConfig& cfg, int workers);

struct CertificationReport {
  std::vector<CertificationTrial> trials;
  std::size_t passed = 0;
};

CertificationReport cmd_certify_attention(const ExperimentConfig& cfg);

/// JSON text of a report (stable key order, no timestamps).
std::string report_json(const MetricsReport& report);
std::string summary_csv(const std::vector<MetricsReport>& reports);
std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows);

}  // namespace otad
