#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace otad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

// Error hierarchy. The CLI maps each family onto a stable exit code:
// ConfigError -> 2, DataError -> 3, NumericalError -> 4.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file contents (bad magic, truncation, non-numeric cells).
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

/// Vector or matrix dimensions do not agree with the model or atlas.
class ShapeError : public DataError {
 public:
  using DataError::DataError;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrainingError : public NumericalError {
 public:
  TrainingError(const std::string& what, int epoch)
      : NumericalError(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : NumericalError(what + " (residual " + std::to_string(residual) + " after " +
                       std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

class InferenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A quantity that is undefined for the given input (e.g. RE of a zero feature).
class UndefinedValueError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline void require_config(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

inline void require_shape(bool ok, const std::string& message) {
  if (!ok) throw ShapeError(message);
}

/// Standard-normal vector of length n.
inline Vector gaussian_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

/// Uniform sample from the closed l2 ball of the given radius.
inline Vector uniform_in_ball(Rng& rng, Eigen::Index n, double radius) {
  Vector dir = gaussian_vector(rng, n);
  const double norm = dir.norm();
  if (norm == 0.0) return Vector::Zero(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(n));
  return dir * (r / norm);
}

/// Rescales `delta` onto the l2 ball of radius `epsilon` if it lies outside.
inline void project_to_ball(Vector& delta, double epsilon) {
  const double norm = delta.norm();
  if (norm > epsilon) delta *= (epsilon > 0.0 ? epsilon / norm : 0.0);
}

/// Derives an independent stream seed from a base seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Index of the largest entry; ties resolve to the lowest index.
inline int argmax(const Vector& v) {
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace otad
