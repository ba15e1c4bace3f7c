#pragma once

#include <cstdint>
#include <vector>

#include "otad/atlas.hpp"
#include "otad/datasets.hpp"
#include "otad/neighbors.hpp"
#include "otad/network.hpp"

namespace otad {

/// Feature map psi: R^d -> R^d built from headless residual blocks.
class EmbeddingNet {
 public:
  EmbeddingNet() = default;
  explicit EmbeddingNet(ResidualNet trunk);

  static EmbeddingNet create(int dim, int blocks, std::uint64_t seed);

  int input_dim() const { return trunk_.dim(); }
  int output_dim() const { return trunk_.dim(); }
  Vector embed(const Vector& x) const { return trunk_.feature(x); }
  Matrix embed_rows(const Matrix& rows) const;

  const ResidualNet& trunk() const { return trunk_; }
  ResidualNet& trunk() { return trunk_; }

  bool operator==(const EmbeddingNet&) const = default;

 private:
  ResidualNet trunk_;
};

struct TripletConfig {
  double margin = 1.0;
  int triplets_per_epoch = 512;
  int batch_size = 64;
  double learning_rate = 0.01;
  double momentum = 0.9;
  int epochs = 10;
  int blocks = 1;
  std::uint64_t rng_seed = 0;
};

/// max(0, |a - p|^2 - |a - n|^2 + margin)
double triplet_loss(const Vector& anchor, const Vector& positive, const Vector& negative, double margin);

/// Minimizes the mean triplet loss over uniformly sampled class-stratified triplets.
EmbeddingNet train_embedding(const Dataset& data, const TripletConfig& cfg);

/// PGD ascent on |psi(x_adv) - psi(x)| inside the l2 ball of radius epsilon.
/// Starts from a seeded random point in the ball, since the gradient vanishes at x.
/// When `iterates` is given every projected iterate is appended to it.
Vector embedding_attack(const EmbeddingNet& net, const Vector& x, double epsilon, int steps,
                        std::uint64_t seed = 0, std::vector<Vector>* iterates = nullptr);

/// Atlas inputs mapped through an embedding, for use as an embedded metric.
class EmbeddingIndex final : public EmbeddedSpace {
 public:
  EmbeddingIndex(EmbeddingNet net, const TransportAtlas& atlas);
  Vector embed(const Vector& x) const override { return net_.embed(x); }
  const Matrix& points() const override { return points_; }
  NeighborMetric metric() const { return EmbeddedMetric{this}; }

 private:
  EmbeddingNet net_;
  Matrix points_;
};

}  // namespace otad
