#pragma once

#include <cstdint>
#include <utility>

#include "ragc/autodiff.hpp"
#include "ragc/matrix.hpp"

namespace ragc::hca {

struct SmoothedFeatures {
  DenseMatrix x_aug;
};

/// Detached snapshots of the four embedding matrices after a forward pass.
struct AugmentedViews {
  DenseMatrix z_a, z_b, e_a, e_b;
};

/// Dynamic semantic correlation matrix; entries in [0,1], support only
/// shrinks under refine_structure.
struct StructureBuffer {
  DenseMatrix a_aug;
};

/// Two node encoders (D x d), two edge encoders (N x d), and the raw balance
/// scalar; alpha = logistic(alpha_raw).
struct EncoderParams {
  ad::NodePtr w_a, w_b;      // node-level
  ad::NodePtr u_a, u_b;      // edge-level
  ad::NodePtr alpha_raw;     // 1x1, logistic-mapped

  static EncoderParams init(std::size_t feature_dim, std::size_t n, std::size_t embed_dim,
                            std::uint64_t seed);
};

/// x_n = x + N(0, sigma_n); x_m = x masked entrywise with ratio r.
std::pair<DenseMatrix, DenseMatrix> perturb_attributes(const DenseMatrix& x, double sigma_n,
                                                       double mask_ratio, std::uint64_t seed);

/// (I - L_tilde)^t x by t successive multiplications.
DenseMatrix laplacian_smooth(const DenseMatrix& x, const DenseMatrix& l_tilde, std::size_t t);

SmoothedFeatures build_x_aug(const DenseMatrix& x, const DenseMatrix& l_tilde, double sigma_n,
                             double mask_ratio, std::size_t t_n, std::size_t t_m,
                             std::uint64_t seed);

/// z_v = row_l2_normalize(x_aug W_v); gradients flow to both weight matrices.
std::pair<ad::NodePtr, ad::NodePtr> encode_nodes(const DenseMatrix& x_aug,
                                                 const EncoderParams& params);

/// e_v = row_l2_normalize((A_aug + I) U_v); the buffer enters as a constant.
/// The +I diagonal floor keeps rows of isolated nodes non-degenerate.
std::pair<ad::NodePtr, ad::NodePtr> encode_edges(const StructureBuffer& buffer,
                                                 const EncoderParams& params);

/// S^{l,m} = alpha Z^l (Z^m)^T + (1-alpha) E^l (E^m)^T, alpha = sigmoid(alpha_raw).
ad::NodePtr contrastive_similarity(const ad::NodePtr& z_l, const ad::NodePtr& z_m,
                                   const ad::NodePtr& e_l, const ad::NodePtr& e_m,
                                   const ad::NodePtr& alpha_raw);

/// A_aug <- minmax(Z^a Z^b^T + E^a E^b^T) elementwise-times A_aug (detached).
StructureBuffer refine_structure(const AugmentedViews& views, const StructureBuffer& buffer);

}  // namespace ragc::hca
