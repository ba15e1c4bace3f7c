#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "otad/atlas.hpp"
#include "otad/common.hpp"

namespace otad {

/// A learned embedding of the atlas inputs used as the neighbor metric.
class EmbeddedSpace {
 public:
  virtual ~EmbeddedSpace() = default;
  virtual Vector embed(const Vector& x) const = 0;
  /// Embedded atlas inputs, one row per atlas point.
  virtual const Matrix& points() const = 0;
};

struct EuclideanMetric {};

struct EmbeddedMetric {
  const EmbeddedSpace* space = nullptr;
};

using NeighborMetric = std::variant<EuclideanMetric, EmbeddedMetric>;

struct NeighborQuery {
  int k = 10;
  NeighborMetric metric = EuclideanMetric{};
  std::optional<std::size_t> exclude_index;
};

/// Neighbor indices in ascending distance order (ties broken by lower index).
struct NeighborSet {
  std::vector<std::size_t> indices;
  std::vector<double> distances;
};

NeighborSet knn(const TransportAtlas& atlas, const Vector& query_x, const NeighborQuery& q);

}  // namespace otad
