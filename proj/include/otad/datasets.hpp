#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "otad/common.hpp"

namespace otad {

enum class TaskKind : std::uint8_t { kClassification = 0, kRegression = 1 };

struct Task {
  TaskKind kind = TaskKind::kClassification;
  int num_classes = 0;  // zero for regression

  static Task classification(int num_classes) { return {TaskKind::kClassification, num_classes}; }
  static Task regression() { return {TaskKind::kRegression, 0}; }
  bool is_classification() const { return kind == TaskKind::kClassification; }
  bool operator==(const Task&) const = default;
};

/// Immutable labeled vector dataset. Inputs are stored one sample per row.
class Dataset {
 public:
  static Dataset classification(Matrix inputs, std::vector<int> labels, int num_classes);
  static Dataset regression(Matrix inputs, std::vector<double> targets);

  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  int dim() const { return static_cast<int>(inputs_.cols()); }
  const Task& task() const { return task_; }

  const Matrix& inputs() const { return inputs_; }
  Vector input(std::size_t i) const { return inputs_.row(static_cast<Eigen::Index>(i)).transpose(); }

  /// Class index; only valid for classification datasets.
  int label(std::size_t i) const { return labels_[i]; }
  /// Regression target, or the class index as a real for classification.
  double target(std::size_t i) const;

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& targets() const { return targets_; }

  Dataset subset(const std::vector<std::size_t>& indices) const;
  /// First `n` samples (or all when n >= size()).
  Dataset head(std::size_t n) const;

  bool operator==(const Dataset& other) const;

 private:
  Dataset(Matrix inputs, std::vector<int> labels, std::vector<double> targets, Task task);

  Matrix inputs_;
  std::vector<int> labels_;
  std::vector<double> targets_;
  Task task_;
};

struct SyntheticSpec {
  int dim = 32;
  int num_classes = 5;
  double class_std = 0.1;
  int train_count = 2000;
  int test_count = 500;
  std::uint64_t rng_seed = 0;
};

struct SyntheticData {
  Dataset train;
  Dataset test;
  Matrix class_means;  // one unit-norm mean per row
};

/// Gaussian class clouds around means drawn uniformly on the unit sphere.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// MNIST-style IDX pair (images 0x00000803, labels 0x00000801). Pixels map to [0, 1].
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

/// Parsed delimited table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path, char delimiter);

/// Per-column z-scoring fitted on training data. Variances are floored at 1e-12.
class FeatureScaler {
 public:
  static constexpr double kVarianceFloor = 1e-12;

  static FeatureScaler fit(const Matrix& inputs);
  Matrix apply(const Matrix& inputs) const;

  const Vector& mean() const { return mean_; }
  const Vector& scale() const { return scale_; }

 private:
  Vector mean_;
  Vector scale_;
};

/// Regression dataset from a delimited file. Features are z-scored with the
/// file's own statistics; the target column is left as is.
Dataset load_csv_regression(const std::string& path, char delimiter, const std::string& target_column);

/// Random train/test split. Classification splits are stratified per class.
std::pair<Dataset, Dataset> split(const Dataset& data, double test_fraction, std::uint64_t seed);

/// Train/test split of a regression CSV with features z-scored by training statistics.
std::pair<Dataset, Dataset> load_csv_regression_split(const std::string& path, char delimiter,
                                                      const std::string& target_column,
                                                      double test_fraction, std::uint64_t seed);

// Dataset cache: "OTDS", u32 version, task, shape, then f64 inputs and targets.
void write_dataset(const Dataset& data, const std::string& path);
Dataset read_dataset(const std::string& path);
void write_dataset(const Dataset& data, std::ostream& out);
Dataset read_dataset(std::istream& in, const std::string& source);

}  // namespace otad
