#include "ragc/objective.hpp"

#include <cmath>

namespace ragc::objective {

double per_node_loss(std::size_t i, std::size_t l, const std::array<DenseMatrix, 4>& s_all,
                     const WeightMatrices& w_all) {
  const std::size_t n = s_all[kAA].rows();
  const auto& s_same = l == 0 ? s_all[kAA] : s_all[kBB];
  const auto& s_cross = l == 0 ? s_all[kAB] : s_all[kBA];
  const auto& w_same = l == 0 ? w_all[kAA] : w_all[kBB];
  const auto& w_cross = l == 0 ? w_all[kAB] : w_all[kBA];

  const double num = std::exp(w_cross(i, i) * s_cross(i, i));
  double neg = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    neg += std::exp(w_same(i, j) * s_same(i, j));
    neg += std::exp(w_cross(i, j) * s_cross(i, j));
  }
  return -std::log(num / (num + neg));
}

ad::NodePtr total_loss(const SimilarityNodes& s_all, const WeightMatrices& w_all) {
  const std::size_t n = s_all[kAA]->value.rows();
  auto weighted_exp = [&](ViewPair p) {
    return ad::exp_(ad::hadamard(s_all[p], ad::constant(w_all[p])));
  };
  auto e_aa = weighted_exp(kAA);
  auto e_ab = weighted_exp(kAB);
  auto e_ba = weighted_exp(kBA);
  auto e_bb = weighted_exp(kBB);

  // For anchor i in view l the numerator is the cross-view diagonal term and
  // the denominator is numerator + all j != i terms over both views; the
  // excluded same-view self term cancels out of the row sum.
  auto view_partial = [&](const ad::NodePtr& e_cross, const ad::NodePtr& e_same) {
    auto denom = ad::subtract(ad::add(ad::row_sum(e_cross), ad::row_sum(e_same)),
                              ad::diag(e_same));
    auto num = ad::diag(e_cross);
    return ad::subtract(ad::sum_all(ad::log_(denom)), ad::sum_all(ad::log_(num)));
  };
  auto total = ad::add(view_partial(e_ab, e_aa), view_partial(e_ba, e_bb));
  return ad::scale(total, 1.0 / (2.0 * static_cast<double>(n)));
}

void optimizer_step(std::map<std::string, ad::NodePtr>& params,
                    const std::map<std::string, DenseMatrix>& grads, AdamState& adam,
                    double lr) {
  ++adam.step;
  const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step));
  const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step));
  for (auto& [name, param] : params) {
    auto it = grads.find(name);
    if (it == grads.end()) continue;
    const DenseMatrix& g = it->second;
    check_finite(g, "optimizer_step gradient");
    auto& m = adam.m.try_emplace(name, g.rows(), g.cols()).first->second;
    auto& v = adam.v.try_emplace(name, g.rows(), g.cols()).first->second;
    DenseMatrix& w = param->value;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double gi = g.data()[i];
      m.data()[i] = adam.beta1 * m.data()[i] + (1.0 - adam.beta1) * gi;
      v.data()[i] = adam.beta2 * v.data()[i] + (1.0 - adam.beta2) * gi * gi;
      const double mhat = m.data()[i] / bc1;
      const double vhat = v.data()[i] / bc2;
      w.data()[i] -= lr * mhat / (std::sqrt(vhat) + adam.eps);
    }
  }
}

SimilarityNodes build_similarities(const DenseMatrix& x_aug,
                                   const hca::StructureBuffer& buffer,
                                   const hca::EncoderParams& params, bool use_edge_views,
                                   hca::AugmentedViews* views_out) {
  auto [z_a, z_b] = hca::encode_nodes(x_aug, params);
  SimilarityNodes s_nodes;
  const ad::NodePtr zs[2] = {z_a, z_b};
  if (use_edge_views) {
    auto [e_a, e_b] = hca::encode_edges(buffer, params);
    const ad::NodePtr es[2] = {e_a, e_b};
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t m = 0; m < 2; ++m)
        s_nodes[l * 2 + m] =
            hca::contrastive_similarity(zs[l], zs[m], es[l], es[m], params.alpha_raw);
    if (views_out) *views_out = {z_a->value, z_b->value, e_a->value, e_b->value};
  } else {
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t m = 0; m < 2; ++m) s_nodes[l * 2 + m] = ad::matmul_nt(zs[l], zs[m]);
    if (views_out) *views_out = {z_a->value, z_b->value, {}, {}};
  }
  return s_nodes;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  x ^= x >> 30; x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27; x *= 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

TrainResult train(const Graph& g, const RunConfig& cfg, const EpochCallback& callback) {
  cfg.validate();
  const std::size_t k = cfg.k > 0 ? cfg.k : g.k;
  if (k == 0) throw ConfigError("train: cluster count unknown (no labels and k unset)");
  const std::size_t n = g.n;
  const bool hca_on = cfg.variant != Variant::no_hca;
  const bool csada_on = cfg.variant != Variant::no_csada;

  auto [a_tilde, l_tilde] = normalized_operators(g);

  DenseMatrix x_aug;
  if (hca_on) {
    x_aug = hca::build_x_aug(g.x, l_tilde, cfg.sigma_n, cfg.mask_ratio, cfg.t_n, cfg.t_m,
                             cfg.seed)
                .x_aug;
  } else {
    x_aug = hca::laplacian_smooth(g.x, l_tilde, cfg.t_n);
  }

  ModelState state{hca::EncoderParams::init(g.x.cols(), n, cfg.embed_dim, cfg.seed),
                   hca::StructureBuffer{g.a}, AdamState{}, 0};

  std::map<std::string, ad::NodePtr> opt_params{{"w_a", state.params.w_a},
                                                {"w_b", state.params.w_b}};
  if (hca_on) {
    opt_params.emplace("u_a", state.params.u_a);
    opt_params.emplace("u_b", state.params.u_b);
    opt_params.emplace("alpha_raw", state.params.alpha_raw);
  }

  const csada::TauSchedule schedule{cfg.tau_start, cfg.tau_end, cfg.epochs};
  TrainResult result{std::move(state), {}, {}, {}};
  ModelState& st = result.state;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    st.epoch = epoch;
    hca::AugmentedViews views;
    SimilarityNodes s_nodes = build_similarities(x_aug, st.buffer, st.params, hca_on, &views);
    if (hca_on) st.buffer = hca::refine_structure(views, st.buffer);
    std::array<DenseMatrix, 4> s_values{s_nodes[0]->value, s_nodes[1]->value,
                                        s_nodes[2]->value, s_nodes[3]->value};

    csada::ClusterState clusters;
    WeightMatrices weights;
    if (csada_on) {
      DenseMatrix z = csada::fuse_embeddings(views.z_a, views.z_b);
      auto km = csada::kmeans(z, k, mix_seed(cfg.seed, epoch), cfg.kmeans_restarts_loop);
      clusters.labels = std::move(km.labels);
      clusters.centers = std::move(km.centers);
      clusters.conf = csada::confidence_scores(z, clusters.labels, clusters.centers);
      const double tau =
          cfg.variant == Variant::no_dynamic_tau ? cfg.tau_start : csada::tau_at(schedule, epoch);
      clusters.high_conf = csada::select_high_confidence(clusters.conf, tau);
      clusters.q = csada::pseudo_label_correlation(clusters.labels);
      for (std::size_t p = 0; p < 4; ++p)
        weights[p] = csada::modulation_weights(s_values[p], clusters.q, clusters.high_conf,
                                               cfg.beta, cfg.gamma);
    } else {
      for (std::size_t p = 0; p < 4; ++p) weights[p] = DenseMatrix(n, n, 1.0);
    }

    auto loss = total_loss(s_nodes, weights);
    const double loss_value = loss->value(0, 0);
    if (!std::isfinite(loss_value))
      throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch));
    result.loss_history.push_back(loss_value);

    if (callback)
      callback(EpochSnapshot{epoch, views, s_values, st.buffer, clusters, loss_value});

    auto grads = ad::backward(loss);
    optimizer_step(opt_params, grads, st.adam, cfg.lr);
  }

  auto [z_a, z_b] = hca::encode_nodes(x_aug, st.params);
  result.z = csada::fuse_embeddings(z_a->value, z_b->value);
  auto km = csada::kmeans(result.z, k, mix_seed(cfg.seed, 0xFFFFFFFFULL),
                          cfg.kmeans_restarts_final);
  result.labels = std::move(km.labels);
  return result;
}

}  // namespace ragc::objective
