#pragma once

#include <vector>

#include "otad/common.hpp"

namespace otad {

/// Multi-head dot-product self-attention F(X) = [f^1(X), ..., f^R(X)] W with
/// f^r(X) = softmax(X Q_r (X K_r)^T / sqrt(D/R)) X V_r, softmax taken row-wise.
struct MultiHeadAttention {
  std::vector<Matrix> query;  // R matrices, D x D/R
  std::vector<Matrix> key;
  std::vector<Matrix> value;
  Matrix out;  // D x D

  static MultiHeadAttention zeros(int model_dim, int heads);
  /// Entries uniform in [-scale, scale].
  static MultiHeadAttention random(int model_dim, int heads, double scale, Rng& rng);

  int model_dim() const { return static_cast<int>(out.rows()); }
  int heads() const { return static_cast<int>(query.size()); }
  int head_dim() const { return heads() == 0 ? 0 : static_cast<int>(query.front().cols()); }

  /// Largest Frobenius norm over all Q, K, V and W.
  double max_frobenius_norm() const;
};

struct AttentionCache {
  Matrix input;
  std::vector<Matrix> q_proj;  // X Q_r
  std::vector<Matrix> k_proj;  // X K_r
  std::vector<Matrix> v_proj;  // X V_r
  std::vector<Matrix> probs;   // row-wise softmax
  Matrix concat;               // [f^1, ..., f^R]
};

struct AttentionGradient {
  std::vector<Matrix> query;
  std::vector<Matrix> key;
  std::vector<Matrix> value;
  Matrix out;
  Matrix input;
};

/// X is N x D (tokens are rows).
Matrix attention_forward(const MultiHeadAttention& attn, const Matrix& x, AttentionCache* cache = nullptr);

AttentionGradient attention_backward(const MultiHeadAttention& attn, const AttentionCache& cache,
                                     const Matrix& grad_out);

}  // namespace otad
