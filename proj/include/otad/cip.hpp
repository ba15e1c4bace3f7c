#pragma once

#include <variant>
#include <vector>

#include "otad/atlas.hpp"
#include "otad/common.hpp"
#include "otad/neighbors.hpp"
#include "otad/network.hpp"

namespace otad {

/// Strong-convexity / smoothness pair (l, L) and the relaxation schedule
/// applied while a neighbor set is not F_{l,L}-integrable.
struct SmoothnessWindow {
  double l = 0.0;
  double L = 2.0;
  double delta1 = 0.2;  // added to L per relaxation
  double delta2 = 0.2;  // subtracted from l per relaxation, clamped at 0
  int max_relaxations = 50;

  /// Throws ConfigError unless 0 <= l < L and the steps are nonnegative.
  void validate() const;
  SmoothnessWindow relaxed() const;
};

/// Right-hand side constant of the pairwise interpolation inequality
/// u_i >= u_j + c_ij for the pairs (x_i, z_i), (x_j, z_j).
double constraint_constant(const Vector& x_i, const Vector& z_i, const Vector& x_j, const Vector& z_j,
                           const SmoothnessWindow& window);

/// c(i, j) holds c_ij for every ordered pair; the diagonal is zero.
struct ConstraintGraph {
  Matrix c;
  double l = 0.0;
  double L = 0.0;

  int size() const { return static_cast<int>(c.rows()); }
};

/// Pairs are the rows of `inputs` and `features`.
ConstraintGraph build_constraint_graph(const Matrix& inputs, const Matrix& features, const SmoothnessWindow& window);

/// Potential values satisfying u_i >= u_j + c_ij for all i, j.
struct PotentialAssignment {
  Vector u;
  double l = 0.0;
  double L = 0.0;
};

/// Witness of non-integrability: a directed cycle i0 -> i1 -> ... -> i0 whose
/// constants c_{i0 i1} + c_{i1 i2} + ... sum to a positive value.
struct Infeasible {
  std::vector<int> cycle;
  double cycle_sum = 0.0;
};

using FeasibilityResult = std::variant<PotentialAssignment, Infeasible>;

/// Solves the difference-constraint system with Bellman-Ford from a virtual
/// source. The returned potentials are the shortest-path distances, i.e. the
/// componentwise-maximal nonpositive solution.
FeasibilityResult feasibility(const ConstraintGraph& graph);

struct CipSolution {
  double v = 0.0;
  Vector z_prime;
  std::vector<int> active_constraints;
  int relaxations_used = 0;
  double residual = 0.0;  // duality gap of the returned point
  int iterations = 0;
  Vector weights;  // optimal simplex multipliers, z' = sum_i weights_i (z_i + l (x' - x_i))
};

/// Minimizes v subject to the K quadratic interpolation constraints around
/// `query`. Every constraint shares the quadratic term |z'|^2 / (2 (L - l)),
/// so the problem is solved through its dual over the K-simplex.
CipSolution solve_qcp(const Vector& query, const Matrix& inputs, const Matrix& features, const Vector& potentials,
                      const SmoothnessWindow& window);

/// Value of constraint i's right-hand side at (query, z).
double qcp_constraint_rhs(const Vector& query, const Vector& x_i, const Vector& z_i, double u_i, const Vector& z,
                          const SmoothnessWindow& window);

enum class ExhaustionPolicy {
  kError,            // throw InferenceError
  kNearestNeighbor,  // solve with the nearest neighbor alone (always integrable)
};

struct RobustInference {
  CipSolution solution;
  SmoothnessWindow window_used;
  NeighborSet neighbors;
  bool fallback_used = false;
};

/// Neighbor search, integrability test with window relaxation, then the QCP
/// solved with the same relaxed window.
RobustInference robust_infer(const TransportAtlas& atlas, const Vector& query_x, const NeighborQuery& q,
                             const SmoothnessWindow& window,
                             ExhaustionPolicy policy = ExhaustionPolicy::kError);

/// Argmax of the head at z' (ties go to the lower class index).
int classify(const ResidualNet& net, const CipSolution& solution);
/// Scalar head output at z'.
double regress(const ResidualNet& net, const CipSolution& solution);

}  // namespace otad
