#include "ragc/csada.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace ragc::csada {

DenseMatrix fuse_embeddings(const DenseMatrix& z_a, const DenseMatrix& z_b) {
  if (!z_a.same_shape(z_b))
    throw ShapeError("fuse_embeddings: shape mismatch " + z_a.shape_str() + " vs " +
                     z_b.shape_str());
  return mean_of_two(z_a, z_b);
}

namespace {

double sq_dist(const DenseMatrix& z, std::size_t i, const DenseMatrix& centers, std::size_t c) {
  double s = 0.0;
  for (std::size_t j = 0; j < z.cols(); ++j) {
    const double d = z(i, j) - centers(c, j);
    s += d * d;
  }
  return s;
}

DenseMatrix kmeanspp_init(const DenseMatrix& z, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = z.rows(), d = z.cols();
  DenseMatrix centers(k, d);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t first = pick(rng);
  for (std::size_t j = 0; j < d; ++j) centers(0, j) = z(first, j);

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], sq_dist(z, i, centers, c - 1));
      total += dist[i];
    }
    std::size_t chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng), acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dist[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    for (std::size_t j = 0; j < d; ++j) centers(c, j) = z(chosen, j);
  }
  return centers;
}

KmeansResult lloyd_once(const DenseMatrix& z, std::size_t k, std::mt19937_64& rng) {
  constexpr std::size_t kMaxIters = 300;
  const std::size_t n = z.rows(), d = z.cols();
  DenseMatrix centers = kmeanspp_init(z, k, rng);
  std::vector<int> labels(n, -1);
  std::vector<double> history;

  for (std::size_t iter = 0; iter < kMaxIters; ++iter) {
    bool changed = false;
    double assign_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = sq_dist(z, i, centers, 0);
      for (std::size_t c = 1; c < k; ++c) {
        const double dd = sq_dist(z, i, centers, c);
        if (dd < best_d) {
          best_d = dd;
          best = c;
        }
      }
      assign_cost += best_d;
      if (labels[i] != static_cast<int>(best)) {
        labels[i] = static_cast<int>(best);
        changed = true;
      }
    }
    history.push_back(assign_cost);
    if (!changed && iter > 0) break;

    centers = DenseMatrix(k, d);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[labels[i]];
      for (std::size_t j = 0; j < d; ++j) centers(labels[i], j) += z(i, j);
    }
    for (std::size_t c = 0; c < k; ++c)
      if (counts[c] > 0)
        for (std::size_t j = 0; j < d; ++j) centers(c, j) /= static_cast<double>(counts[c]);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      // re-seed the empty cluster from the point farthest from its own center
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dd = sq_dist(z, i, centers, labels[i]);
        if (dd > far_d) {
          far_d = dd;
          far = i;
        }
      }
      for (std::size_t j = 0; j < d; ++j) centers(c, j) = z(far, j);
    }
  }

  double distortion = 0.0;
  for (std::size_t i = 0; i < n; ++i) distortion += sq_dist(z, i, centers, labels[i]);
  return {std::move(labels), std::move(centers), distortion, std::move(history)};
}

}  // namespace

KmeansResult kmeans(const DenseMatrix& z, std::size_t k, std::uint64_t seed,
                    std::size_t restarts) {
  if (k == 0 || k > z.rows())
    throw std::invalid_argument("kmeans: need 1 <= k <= n, got k=" + std::to_string(k) +
                                ", n=" + std::to_string(z.rows()));
  std::mt19937_64 rng(seed);
  KmeansResult best;
  bool have = false;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, restarts); ++r) {
    KmeansResult res = lloyd_once(z, k, rng);
    if (!have || res.distortion < best.distortion) {
      best = std::move(res);
      have = true;
    }
  }
  return best;
}

std::vector<double> confidence_scores(const DenseMatrix& z, const std::vector<int>& labels,
                                      const DenseMatrix& centers) {
  const std::size_t n = z.rows();
  std::vector<double> score(n);
  for (std::size_t i = 0; i < n; ++i)
    score[i] = -std::sqrt(sq_dist(z, i, centers, labels[i]));
  const double mx = *std::max_element(score.begin(), score.end());
  double total = 0.0;
  for (double& s : score) {
    s = std::exp(s - mx);
    total += s;
  }
  for (double& s : score) s /= total;
  return score;
}

std::vector<std::size_t> select_high_confidence(const std::vector<double>& conf, double tau) {
  if (tau < 0.0 || tau >= 1.0)
    throw std::invalid_argument("select_high_confidence: tau must be in [0,1)");
  const std::size_t n = conf.size();
  const auto m = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * (1.0 - tau) + 0.5));  // round half up
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&conf](std::size_t a, std::size_t b) { return conf[a] > conf[b]; });
  idx.resize(std::min(m, n));
  return idx;
}

double tau_at(const TauSchedule& schedule, std::size_t epoch) {
  if (epoch >= schedule.total_epochs)
    throw std::invalid_argument("tau_at: epoch past end of schedule");
  if (schedule.total_epochs <= 1) return schedule.tau_start;
  const double frac =
      static_cast<double>(epoch) / static_cast<double>(schedule.total_epochs - 1);
  return schedule.tau_start + (schedule.tau_end - schedule.tau_start) * frac;
}

DenseMatrix pseudo_label_correlation(const std::vector<int>& labels) {
  const std::size_t n = labels.size();
  DenseMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = labels[i] == labels[j] ? 1.0 : 0.0;
  return q;
}

double modulation_weight_scalar(double s_hat, bool positive_pair, double beta, double gamma) {
  const double exponent = positive_pair ? beta : gamma;
  return std::exp(std::pow(1.0 - s_hat, exponent));
}

DenseMatrix modulation_weights(const DenseMatrix& s, const DenseMatrix& q,
                               const std::vector<std::size_t>& high_conf, double beta,
                               double gamma) {
  if (beta <= 0.0 || beta >= 1.0)
    throw ConfigError("modulation_weights: beta must be in (0,1), got " + std::to_string(beta));
  if (gamma < 1.0 || gamma > 5.0)
    throw ConfigError("modulation_weights: gamma must be in [1,5], got " + std::to_string(gamma));

  const std::size_t n = s.rows();
  std::vector<char> in_h(n, 0);
  for (std::size_t i : high_conf) in_h[i] = 1;

  DenseMatrix s_hat = minmax_normalize(s);
  DenseMatrix w(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_h[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_h[j]) continue;
      w(i, j) = modulation_weight_scalar(s_hat(i, j), q(i, j) != 0.0, beta, gamma);
    }
  }
  return w;
}

}  // namespace ragc::csada
