#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otad/atlas.hpp"
#include "otad/cip.hpp"
#include "otad/common.hpp"
#include "otad/neighbors.hpp"

namespace otad {

/// One training example for the learned convex-integration solver.
struct SurrogateSample {
  Vector query;
  Matrix neighbor_inputs;    // K x d
  Matrix neighbor_features;  // K x e
  Vector qcp_target;         // solver output for the query
  Vector net_feature;        // frozen network feature of the query
};

/// Leave-one-out samples: every atlas point is queried against the rest of the atlas.
std::vector<SurrogateSample> build_training_set(const TransportAtlas& atlas, const NeighborQuery& q,
                                                const SmoothnessWindow& window,
                                                ExhaustionPolicy policy = ExhaustionPolicy::kError);

enum class SurrogateArchitecture : std::uint8_t { kFlatMlp = 0, kAttention = 1 };

struct SurrogateTrainConfig {
  double mix_weight = 1.0;  // weight on the solver target; 1 - mix_weight on the network feature
  int epochs = 60;
  double learning_rate = 1e-3;
  int batch_size = 16;
  std::uint64_t rng_seed = 0;
  SurrogateArchitecture architecture = SurrogateArchitecture::kFlatMlp;
  int hidden = 64;      // flat-mlp hidden width
  int model_dim = 32;   // attention token width
  int heads = 2;
};

/// mix_weight |out - qcp|^2 + (1 - mix_weight) |out - feature|^2
double mixed_loss(const Vector& out, const Vector& qcp_target, const Vector& net_feature, double mix_weight);

struct SurrogateGradient {
  std::vector<Matrix> params;
  Vector query;
  Matrix neighbor_inputs;
  Matrix neighbor_features;
};

/// Small differentiable network mapping (query, neighbor inputs, neighbor
/// features) to a feature. Both architectures add the mean neighbor feature
/// to their learned output.
///
/// kFlatMlp concatenates all inputs into one vector. kAttention lays out
/// 2K+1 tokens (query, K inputs, K features) with per-type embeddings, runs
/// one attention block with an MLP, and reads the output off the query token;
/// it is invariant to neighbor order.
class SurrogateNet {
 public:
  static SurrogateNet create(SurrogateArchitecture arch, int input_dim, int feature_dim, int k,
                             const SurrogateTrainConfig& cfg);

  SurrogateArchitecture architecture() const { return arch_; }
  int input_dim() const { return input_dim_; }
  int feature_dim() const { return feature_dim_; }
  int neighbors() const { return k_; }

  Vector forward(const Vector& query, const Matrix& neighbor_inputs, const Matrix& neighbor_features) const;
  /// Gradients of <grad_out, forward(...)> with respect to parameters and inputs.
  SurrogateGradient backward(const Vector& query, const Matrix& neighbor_inputs, const Matrix& neighbor_features,
                             const Vector& grad_out) const;

  std::vector<Matrix>& params() { return params_; }
  const std::vector<Matrix>& params() const { return params_; }

  void save(const std::string& path) const;
  static SurrogateNet load(const std::string& path);

  bool operator==(const SurrogateNet&) const;

 private:
  void check_shapes(const Vector& query, const Matrix& neighbor_inputs, const Matrix& neighbor_features) const;

  SurrogateArchitecture arch_ = SurrogateArchitecture::kFlatMlp;
  int input_dim_ = 0;
  int feature_dim_ = 0;
  int k_ = 0;
  int heads_ = 1;
  std::vector<Matrix> params_;
};

struct SurrogateTrainReport {
  std::vector<double> epoch_loss;
};

/// Adam on the mixed loss averaged over samples.
SurrogateNet train_surrogate(const std::vector<SurrogateSample>& samples, const SurrogateTrainConfig& cfg,
                             SurrogateTrainReport* report = nullptr);

/// Continues training an existing surrogate (zero epochs leaves it unchanged).
void fit_surrogate(SurrogateNet& net, const std::vector<SurrogateSample>& samples, const SurrogateTrainConfig& cfg,
                   SurrogateTrainReport* report = nullptr);

Vector surrogate_infer(const SurrogateNet& net, const Vector& query, const Matrix& neighbor_inputs,
                       const Matrix& neighbor_features);

/// Mean over samples of |out - target|^2 against the solver targets.
double surrogate_mse(const SurrogateNet& net, const std::vector<SurrogateSample>& samples);

std::string architecture_name(SurrogateArchitecture arch);
SurrogateArchitecture parse_architecture(const std::string& name);

}  // namespace otad
