#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otad/atlas.hpp"
#include "otad/common.hpp"
#include "otad/datasets.hpp"

namespace otad {

/// Two-layer perceptron R_k(x) = W2 tanh(W1 x + b1) + b2 with hidden width d.
struct ResidualBlock {
  Matrix w1;  // hidden x d
  Vector b1;
  Matrix w2;  // d x hidden
  Vector b2;
};

/// All trainable tensors of a ResidualNet. Also used for gradients and
/// optimizer state, which share the layout.
struct NetParameters {
  std::vector<ResidualBlock> blocks;
  Matrix head_w;  // out_dim x d (may have zero rows when there is no head)
  Vector head_b;

  NetParameters zeros_like() const;
  std::size_t count() const;

  /// Calls f(double* data, Eigen::Index size, bool is_bias) for every tensor.
  template <typename F>
  void for_each(F&& f) {
    for (auto& b : blocks) {
      f(b.w1.data(), b.w1.size(), false);
      f(b.b1.data(), b.b1.size(), true);
      f(b.w2.data(), b.w2.size(), false);
      f(b.b2.data(), b.b2.size(), true);
    }
    f(head_w.data(), head_w.size(), false);
    f(head_b.data(), head_b.size(), true);
  }
  template <typename F>
  void for_each(F&& f) const {
    const_cast<NetParameters*>(this)->for_each([&](double* p, Eigen::Index n, bool bias) {
      f(static_cast<const double*>(p), n, bias);
    });
  }
};

struct ForwardResult {
  Vector feature;
  Vector logits;
  std::vector<Vector> block_outputs;
};

/// Intermediate activations of a batched forward pass (samples are columns).
struct BatchCache {
  std::vector<Matrix> block_inputs;   // x^{k-1}
  std::vector<Matrix> hidden;         // tanh(W1 x^{k-1} + b1)
  std::vector<Matrix> block_outputs;  // R_k(x^{k-1})
  Matrix feature;
  Matrix logits;
};

struct BackwardResult {
  NetParameters grad;
  Matrix input_grad;  // d x B
};

/// m-block dimension-invariant residual network with an affine head.
class ResidualNet {
 public:
  ResidualNet() = default;

  /// Fan-in scaled uniform initialization. `out_dim` may be 0 for a headless trunk.
  static ResidualNet create(int dim, int blocks, int out_dim, bool residual, std::uint64_t seed);
  /// All-zero weights and biases.
  static ResidualNet zeros(int dim, int blocks, int out_dim, bool residual);

  int dim() const { return dim_; }
  int num_blocks() const { return static_cast<int>(params_.blocks.size()); }
  int out_dim() const { return static_cast<int>(params_.head_w.rows()); }
  bool residual_enabled() const { return residual_; }

  const NetParameters& params() const { return params_; }
  NetParameters& params() { return params_; }

  ForwardResult forward(const Vector& x) const;
  Vector feature(const Vector& x) const;
  Vector logits(const Vector& x) const { return head(feature(x)); }
  Vector head(const Vector& z) const;

  BatchCache forward_batch(const Matrix& x) const;

  /// Backpropagates feature and logit gradients (both d/c x B, either may be
  /// empty) plus `energy_coeff * sum_k ||R_k||^2` through the cached pass.
  BackwardResult backward(const BatchCache& cache, const Matrix& grad_feature, const Matrix& grad_logits,
                          double energy_coeff) const;

  /// Input gradient only, skipping parameter gradients.
  Matrix backward_input(const BatchCache& cache, const Matrix& grad_feature, const Matrix& grad_logits) const;

  bool operator==(const ResidualNet& other) const;

 private:
  int dim_ = 0;
  bool residual_ = true;
  NetParameters params_;
};

/// Sum over samples and blocks of squared block-output norms.
double energy_regularizer(const std::vector<Vector>& block_outputs);
double energy_regularizer(const std::vector<std::vector<Vector>>& per_sample_block_outputs);

struct TrainConfig {
  double energy_weight = 0.0;
  double weight_decay = 5e-4;
  double learning_rate = 0.05;
  double momentum = 0.9;
  int epochs = 20;
  int batch_size = 64;
  std::uint64_t rng_seed = 0;
  int lr_decay_every = 0;  // 0 disables step decay
  double lr_decay_factor = 0.1;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  std::optional<double> acc;  // classification only
  double mean_block_norm = 0.0;
  std::vector<double> block_norms;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
};

struct LossValue {
  double total = 0.0;
  double data = 0.0;
  double energy = 0.0;
  int correct = 0;
};

/// Mean task loss (cross-entropy or MSE) plus `energy_weight` times the mean
/// per-sample energy, over the columns of `x`.
LossValue evaluate_loss(const ResidualNet& net, const Matrix& x, const std::vector<double>& targets,
                        const Task& task, double energy_weight);

struct LossGradient {
  LossValue value;
  BackwardResult backward;
  BatchCache cache;
};

LossGradient loss_and_gradient(const ResidualNet& net, const Matrix& x, const std::vector<double>& targets,
                               const Task& task, double energy_weight);

/// Mini-batch SGD with momentum and weight decay (biases exempt).
TrainReport train(ResidualNet& net, const Dataset& data, const TrainConfig& cfg);

/// Worst absolute gap between analytic parameter gradients and central
/// differences (step 1e-5) for the single-sample total loss.
double gradient_check(const ResidualNet& net, const Vector& x, double target, const Task& task,
                      double energy_weight);

/// Gradient of the task loss for one sample with respect to the input.
Vector loss_input_gradient(const ResidualNet& net, const Vector& x, double target, const Task& task);

TransportAtlas extract_atlas(const ResidualNet& net, const Dataset& data);

double accuracy(const ResidualNet& net, const Dataset& data);

// Checkpoint: "OTNN", u32 version, tag string, shape header, row-major weights.
void save_checkpoint(const ResidualNet& net, const std::string& path, const std::string& tag = "network");
ResidualNet load_checkpoint(const std::string& path, std::string* tag = nullptr);
void write_net(const ResidualNet& net, std::ostream& out, const std::string& tag);
ResidualNet read_net(std::istream& in, const std::string& source, std::string* tag);

/// Line-delimited JSON: {"epoch", "loss", "acc", "mean_block_norm"} per record.
std::string training_log_jsonl(const TrainReport& report);

}  // namespace otad
