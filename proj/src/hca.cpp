#include "ragc/hca.hpp"

#include <cmath>
#include <random>

namespace ragc::hca {

EncoderParams EncoderParams::init(std::size_t feature_dim, std::size_t n, std::size_t embed_dim,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform_init = [&rng](std::size_t rows, std::size_t cols) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(rows));
    std::uniform_real_distribution<double> dist(-bound, bound);
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    return m;
  };
  EncoderParams p;
  p.w_a = ad::parameter(uniform_init(feature_dim, embed_dim), "w_a");
  p.w_b = ad::parameter(uniform_init(feature_dim, embed_dim), "w_b");
  p.u_a = ad::parameter(uniform_init(n, embed_dim), "u_a");
  p.u_b = ad::parameter(uniform_init(n, embed_dim), "u_b");
  p.alpha_raw = ad::parameter(DenseMatrix(1, 1, 0.0), "alpha_raw");  // logistic(0) = 0.5
  return p;
}

std::pair<DenseMatrix, DenseMatrix> perturb_attributes(const DenseMatrix& x, double sigma_n,
                                                       double mask_ratio, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DenseMatrix x_n = x;
  if (sigma_n > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma_n);
    for (std::size_t i = 0; i < x_n.size(); ++i) x_n.data()[i] += noise(rng);
  }
  DenseMatrix x_m = x;
  if (mask_ratio > 0.0) {
    std::bernoulli_distribution drop(mask_ratio);
    for (std::size_t i = 0; i < x_m.size(); ++i)
      if (drop(rng)) x_m.data()[i] = 0.0;
  }
  return {std::move(x_n), std::move(x_m)};
}

DenseMatrix laplacian_smooth(const DenseMatrix& x, const DenseMatrix& l_tilde, std::size_t t) {
  if (t == 0) return x;
  const DenseMatrix filter = subtract(DenseMatrix::identity(l_tilde.rows()), l_tilde);
  DenseMatrix out = x;
  for (std::size_t i = 0; i < t; ++i) out = matmul(filter, out);
  return out;
}

SmoothedFeatures build_x_aug(const DenseMatrix& x, const DenseMatrix& l_tilde, double sigma_n,
                             double mask_ratio, std::size_t t_n, std::size_t t_m,
                             std::uint64_t seed) {
  auto [x_n, x_m] = perturb_attributes(x, sigma_n, mask_ratio, seed);
  DenseMatrix x_n_l = laplacian_smooth(x_n, l_tilde, t_n);
  DenseMatrix x_m_l = laplacian_smooth(x_m, l_tilde, t_m);
  return SmoothedFeatures{mean_of_two(x_n_l, x_m_l)};
}

std::pair<ad::NodePtr, ad::NodePtr> encode_nodes(const DenseMatrix& x_aug,
                                                 const EncoderParams& params) {
  auto input = ad::constant(x_aug);
  auto z_a = ad::row_l2_normalize(ad::matmul(input, params.w_a));
  auto z_b = ad::row_l2_normalize(ad::matmul(input, params.w_b));
  return {z_a, z_b};
}

std::pair<ad::NodePtr, ad::NodePtr> encode_edges(const StructureBuffer& buffer,
                                                 const EncoderParams& params) {
  auto input = ad::constant(
      add(buffer.a_aug, DenseMatrix::identity(buffer.a_aug.rows())));
  auto e_a = ad::row_l2_normalize(ad::matmul(input, params.u_a));
  auto e_b = ad::row_l2_normalize(ad::matmul(input, params.u_b));
  return {e_a, e_b};
}

ad::NodePtr contrastive_similarity(const ad::NodePtr& z_l, const ad::NodePtr& z_m,
                                   const ad::NodePtr& e_l, const ad::NodePtr& e_m,
                                   const ad::NodePtr& alpha_raw) {
  auto alpha = ad::sigmoid(alpha_raw);
  auto one = ad::constant(DenseMatrix(1, 1, 1.0));
  auto one_minus_alpha = ad::subtract(one, alpha);
  auto node_term = ad::scalar_scale(alpha, ad::matmul_nt(z_l, z_m));
  auto edge_term = ad::scalar_scale(one_minus_alpha, ad::matmul_nt(e_l, e_m));
  return ad::add(node_term, edge_term);
}

StructureBuffer refine_structure(const AugmentedViews& views, const StructureBuffer& buffer) {
  DenseMatrix gram_sum = add(matmul_nt(views.z_a, views.z_b), matmul_nt(views.e_a, views.e_b));
  DenseMatrix factor = minmax_normalize(gram_sum);
  return StructureBuffer{hadamard(factor, buffer.a_aug)};
}

}  // namespace ragc::hca
