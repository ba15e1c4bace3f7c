#pragma once

#include <string>
#include <vector>

#include "otad/common.hpp"
#include "otad/datasets.hpp"

namespace otad {

/// Discrete transport map {(x_i, z_i)} from training inputs to last-layer
/// features, with the training targets attached. Immutable once built.
class TransportAtlas {
 public:
  TransportAtlas(Matrix inputs, Matrix features, std::vector<double> targets, Task task);

  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  int input_dim() const { return static_cast<int>(inputs_.cols()); }
  int feature_dim() const { return static_cast<int>(features_.cols()); }
  const Task& task() const { return task_; }

  const Matrix& inputs() const { return inputs_; }
  const Matrix& features() const { return features_; }
  const std::vector<double>& targets() const { return targets_; }

  auto input(std::size_t i) const { return inputs_.row(static_cast<Eigen::Index>(i)); }
  auto feature(std::size_t i) const { return features_.row(static_cast<Eigen::Index>(i)); }

  bool operator==(const TransportAtlas& other) const;

 private:
  Matrix inputs_;
  Matrix features_;
  std::vector<double> targets_;
  Task task_;
};

// Atlas file: "OTAT", u32 version, task, inputs and features as row-major f64.
void write_atlas(const TransportAtlas& atlas, const std::string& path);
TransportAtlas read_atlas(const std::string& path);

}  // namespace otad
