#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "otad/atlas.hpp"
#include "otad/attention.hpp"
#include "otad/cip.hpp"
#include "otad/common.hpp"
#include "otad/neighbors.hpp"
#include "otad/network.hpp"
#include "otad/surrogate.hpp"

namespace otad {

// ---------------------------------------------------------------------------
// Defenses

/// Maps an input to a feature and to head scores (logits, or the scalar
/// regression output as a 1-vector). Implementations must be safe for
/// concurrent read-only calls.
class Defense {
 public:
  virtual ~Defense() = default;
  virtual std::string name() const = 0;
  virtual Vector feature(const Vector& x) const = 0;
  virtual Vector scores(const Vector& x) const = 0;
  int predict(const Vector& x) const { return argmax(scores(x)); }
};

class FrozenNetDefense final : public Defense {
 public:
  explicit FrozenNetDefense(const ResidualNet& net) : net_(net) {}
  std::string name() const override { return "frozen-net"; }
  Vector feature(const Vector& x) const override { return net_.feature(x); }
  Vector scores(const Vector& x) const override { return net_.logits(x); }

 private:
  const ResidualNet& net_;
};

/// Neighbor retrieval, integrability relaxation and the QCP, then the frozen head.
class OtadDefense final : public Defense {
 public:
  OtadDefense(const ResidualNet& net, const TransportAtlas& atlas, NeighborQuery query, SmoothnessWindow window,
              ExhaustionPolicy policy = ExhaustionPolicy::kNearestNeighbor)
      : net_(net), atlas_(atlas), query_(std::move(query)), window_(window), policy_(policy) {}
  std::string name() const override { return "otad"; }
  Vector feature(const Vector& x) const override { return infer(x).solution.z_prime; }
  Vector scores(const Vector& x) const override { return net_.head(feature(x)); }
  RobustInference infer(const Vector& x) const { return robust_infer(atlas_, x, query_, window_, policy_); }

 private:
  const ResidualNet& net_;
  const TransportAtlas& atlas_;
  NeighborQuery query_;
  SmoothnessWindow window_;
  ExhaustionPolicy policy_;
};

/// Mean of the K neighbor features.
class KnnMeanDefense final : public Defense {
 public:
  KnnMeanDefense(const ResidualNet& net, const TransportAtlas& atlas, NeighborQuery query)
      : net_(net), atlas_(atlas), query_(std::move(query)) {}
  std::string name() const override { return "knn-mean"; }
  Vector feature(const Vector& x) const override;
  Vector scores(const Vector& x) const override { return net_.head(feature(x)); }

 private:
  const ResidualNet& net_;
  const TransportAtlas& atlas_;
  NeighborQuery query_;
};

/// Learned solver in place of the QCP. Neighbor retrieval is piecewise
/// constant in x, so input gradients flow through the query slot only.
class SurrogateDefense final : public Defense {
 public:
  SurrogateDefense(const ResidualNet& net, const TransportAtlas& atlas, const SurrogateNet& surrogate,
                   NeighborQuery query)
      : net_(net), atlas_(atlas), surrogate_(surrogate), query_(std::move(query)) {}
  std::string name() const override { return "otad-surrogate"; }
  Vector feature(const Vector& x) const override;
  Vector scores(const Vector& x) const override { return net_.head(feature(x)); }
  /// Gradient of the task loss of head(surrogate(x)) with respect to x.
  Vector loss_gradient(const Vector& x, double target) const;

 private:
  const ResidualNet& net_;
  const TransportAtlas& atlas_;
  const SurrogateNet& surrogate_;
  NeighborQuery query_;
};

// ---------------------------------------------------------------------------
// Attacks

enum class AttackKind { kBpdaPgd, kCwEvolutionary, kRandomSearch, kPgdDirect, kRegressionPgd, kNoise };

std::string attack_name(AttackKind kind);
AttackKind parse_attack(const std::string& name);

struct AttackConfig {
  AttackKind kind = AttackKind::kBpdaPgd;
  double epsilon = 1.0;
  int steps = 100;  // iterations for gradient attacks, query budget for black-box attacks
  std::optional<double> step_size;  // default 2.5 epsilon / steps
  double mutation_sigma = 0.1;
  std::uint64_t rng_seed = 0;

  void validate() const;
  double effective_step() const;
};

/// Query-only access to a classifier's scores with a hard budget.
/// Calling query() once the budget is spent throws std::logic_error.
class ScoreOracle {
 public:
  ScoreOracle(std::function<Vector(const Vector&)> scores, int budget)
      : scores_(std::move(scores)), budget_(budget) {}
  Vector query(const Vector& x);
  int used() const { return used_; }
  int remaining() const { return budget_ - used_; }

 private:
  std::function<Vector(const Vector&)> scores_;
  int budget_;
  int used_ = 0;
};

/// s_y - max_{j != y} s_j; negative means misclassified.
double cw_margin(const Vector& scores, int label);

/// PGD on the frozen network's loss (backward pass) while the returned iterate
/// is the one with the lowest defense margin (forward pass). Stops early once
/// the defense is fooled.
Vector bpda_pgd(const Defense& defense, const ResidualNet& base, const Vector& x, int label,
                const AttackConfig& cfg);

/// PGD using the surrogate defense's own input gradients.
Vector pgd_direct(const SurrogateDefense& defense, const Vector& x, int label, const AttackConfig& cfg);

/// (1+1) evolution strategy on the CW margin with one-fifth success-rule step
/// adaptation. The initial evaluation of x counts against the budget.
Vector cw_evolutionary(ScoreOracle& oracle, const Vector& x, int label, const AttackConfig& cfg);

/// Square-style l2 random search: a block-sign initialization on the
/// epsilon-sphere followed by block re-assignments of shrinking width, each
/// accepted when it lowers the margin.
Vector random_search_attack(ScoreOracle& oracle, const Vector& x, int label, const AttackConfig& cfg);

/// PGD ascent on (f(x) - y)^2 through the network.
Vector regression_attack(const ResidualNet& base, const Vector& x, double target, const AttackConfig& cfg);

/// x plus a uniformly random direction scaled to norm epsilon.
Vector noise_perturbation(const Vector& x, double epsilon, std::uint64_t seed);

/// Dispatches a classification attack against the defense.
Vector run_classification_attack(const Defense& defense, const ResidualNet& base, const Vector& x, int label,
                                 const AttackConfig& cfg);

// ---------------------------------------------------------------------------
// Metrics

/// |R - f|^2 / |R|^2; throws UndefinedValueError when R is zero.
double relative_error(const Vector& net_feature, const Vector& defense_feature);
double relative_error(const ResidualNet& base, const Defense& defense, const Vector& x);

/// Largest |f(a) - f(b)| / |a - b| over x and `samples` points drawn
/// uniformly in the radius ball around x (all pairs).
double local_lipschitz_estimate(const std::function<Vector(const Vector&)>& map, const Vector& x, double radius,
                                int samples, std::uint64_t seed);

struct RegressionMetrics {
  double mse = 0.0;
  double smape = 0.0;  // mean of 2|a - b| / (|a| + |b|), a term is 0 when both are 0
  double mae = 0.0;
};

RegressionMetrics regression_metrics(const std::vector<double>& predicted, const std::vector<double>& truth);

/// Rank correlation with average ranks for ties. NaN when either side is constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

// ---------------------------------------------------------------------------
// Evaluation harness

struct SampleRecord {
  std::size_t index = 0;
  double target = 0.0;
  double clean_output = 0.0;  // predicted class, or regression output
  double adversarial_output = 0.0;
  double perturbation_norm = 0.0;
  std::optional<double> relative_error;  // absent when the network feature is zero
};

struct MetricsReport {
  std::string dataset;
  std::string defense;
  AttackConfig attack;
  std::optional<double> standard_acc;  // classification only
  std::optional<double> robust_acc;
  double mean_relative_error = 0.0;
  std::size_t undefined_relative_errors = 0;
  std::optional<RegressionMetrics> clean_regression;  // regression only
  std::optional<RegressionMetrics> attacked_regression;
  double lipschitz_estimate = 0.0;
  std::vector<SampleRecord> per_sample;
};

struct EvaluationOptions {
  int workers = 1;
  double lipschitz_radius = 0.3;
  int lipschitz_samples = 6;
  std::size_t lipschitz_points = 20;  // leading samples that get a Lipschitz estimate
  std::uint64_t seed = 0;
};

/// Clean and attacked predictions of the defense on the given test rows.
/// A sample counts as robust only when both its clean and attacked
/// predictions are correct. Each sample gets its own attack seed, so the
/// result does not depend on the worker count.
MetricsReport evaluate_defense(const Defense& defense, const ResidualNet& base, const Dataset& test,
                               const std::vector<std::size_t>& indices, const AttackConfig& attack,
                               const EvaluationOptions& options);

// ---------------------------------------------------------------------------
// Attention Lipschitz certification

struct AttentionSpec {
  MultiHeadAttention attention;
  int tokens = 1;
  double input_bound = 1.0;              // M, bound on |X|_F
  std::optional<double> param_bound;     // M_theta; measured when absent

  double measured_param_bound() const;
};

double attention_lipschitz_bound(int tokens, int model_dim, int heads, double input_bound, double param_bound);
double attention_lipschitz_bound(const AttentionSpec& spec);

/// Spectral norm of the attention Jacobian at X by power iteration, with
/// central-difference JVPs (step 1e-5) and analytic VJPs.
double attention_jacobian_norm(const MultiHeadAttention& attn, const Matrix& x, int iterations = 30,
                               std::uint64_t seed = 0);

struct CertificationTrial {
  double bound = 0.0;
  double empirical = 0.0;
  double param_bound = 0.0;
  bool pass = false;
};

/// Largest Jacobian norm over `inputs` random inputs with |X|_F <= M.
CertificationTrial certify_attention(const AttentionSpec& spec, int inputs, std::uint64_t seed);

}  // namespace otad
