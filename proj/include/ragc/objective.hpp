#pragma once

#include <array>
#include <functional>
#include <map>

#include "ragc/config.hpp"
#include "ragc/csada.hpp"
#include "ragc/graphio.hpp"
#include "ragc/hca.hpp"

namespace ragc::objective {

/// Index order for the four (l,m) view pairs: aa, ab, ba, bb.
enum ViewPair : std::size_t { kAA = 0, kAB = 1, kBA = 2, kBB = 3 };
using SimilarityNodes = std::array<ad::NodePtr, 4>;
using WeightMatrices = std::array<DenseMatrix, 4>;

/// Per-node contrastive loss on plain values; anchor i in view l (0=a, 1=b).
double per_node_loss(std::size_t i, std::size_t l,
                     const std::array<DenseMatrix, 4>& s_all, const WeightMatrices& w_all);

/// Differentiable total loss: mean of per-node losses across both views.
/// The weight matrices enter as constants.
ad::NodePtr total_loss(const SimilarityNodes& s_all, const WeightMatrices& w_all);

/// One forward pass from the precomputed x_aug and structure buffer to the
/// four similarity matrices. With use_edge_views=false (the no_hca variant)
/// similarities are plain node-embedding Gram matrices and alpha is unused.
SimilarityNodes build_similarities(const DenseMatrix& x_aug,
                                   const hca::StructureBuffer& buffer,
                                   const hca::EncoderParams& params, bool use_edge_views,
                                   hca::AugmentedViews* views_out = nullptr);

struct AdamState {
  std::map<std::string, DenseMatrix> m;
  std::map<std::string, DenseMatrix> v;
  std::size_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One Adam update over the given parameter set.
void optimizer_step(std::map<std::string, ad::NodePtr>& params,
                    const std::map<std::string, DenseMatrix>& grads, AdamState& adam, double lr);

struct ModelState {
  hca::EncoderParams params;
  hca::StructureBuffer buffer;
  AdamState adam;
  std::size_t epoch = 0;
};

struct EpochSnapshot {
  std::size_t epoch;
  const hca::AugmentedViews& views;
  const std::array<DenseMatrix, 4>& similarities;
  const hca::StructureBuffer& buffer;
  const csada::ClusterState& clusters;
  double loss;
};
using EpochCallback = std::function<void(const EpochSnapshot&)>;

struct TrainResult {
  ModelState state;
  DenseMatrix z;                 // final fused embedding, N x d
  std::vector<int> labels;       // final K-means prediction
  std::vector<double> loss_history;
};

/// Full training loop: X_aug built once, A_aug initialized to A, then per
/// epoch encode / refine / cluster / weight / backprop / Adam; final K-means
/// with extra restarts yields the prediction. Deterministic per cfg.seed.
TrainResult train(const Graph& g, const RunConfig& cfg, const EpochCallback& callback = {});

}  // namespace ragc::objective
