#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ragc/matrix.hpp"

namespace ragc {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Attributed graph: N x D features, N x N binary symmetric adjacency with a
/// zero diagonal, optional ground-truth labels remapped to 0..K-1.
struct Graph {
  DenseMatrix x;
  DenseMatrix a;
  std::optional<std::vector<int>> labels;          // remapped 0..K-1
  std::optional<std::vector<long long>> raw_labels;  // as read from disk
  std::size_t n = 0;
  std::size_t k = 0;
};

/// Reads features.csv / edges.csv (labels.csv optional) from `directory`.
/// Edges are symmetrized and deduplicated; self-loops are stripped on load
/// and re-added later through the A + I normalization.
Graph load_dataset(const std::string& directory);

/// Writes features.csv / edges.csv (and labels.csv when present) in the same
/// format load_dataset reads. Features round-trip exactly.
void save_dataset(const Graph& g, const std::string& directory);

/// A_hat = A + I; A_tilde = D_hat^{-1/2} A_hat D_hat^{-1/2}; L_tilde = I - A_tilde.
std::pair<DenseMatrix, DenseMatrix> normalized_operators(const Graph& g);

struct SbmParams {
  std::size_t blocks = 3;
  std::size_t per_block = 50;
  double p_in = 0.3;
  double p_out = 0.02;
  std::size_t feature_dim = 16;
  double feature_shift = 1.5;
  std::uint64_t seed = 0;
};

/// Planted-community random graph with Gaussian features offset per block.
/// Deterministic for a fixed seed.
Graph generate_sbm(const SbmParams& params);

}  // namespace ragc
