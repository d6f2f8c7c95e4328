#include "ragc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ragc::metrics {

namespace {

int num_classes(const std::vector<int>& v) {
  int mx = -1;
  for (int x : v) mx = std::max(mx, x);
  return mx + 1;
}

void check_inputs(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.empty() || truth.empty()) throw std::invalid_argument("metrics: empty label vector");
  if (pred.size() != truth.size())
    throw std::invalid_argument("metrics: label vectors differ in length");
}

/// K x K contingency table (rows = pred, cols = truth), square-padded.
DenseMatrix contingency(const std::vector<int>& pred, const std::vector<int>& truth) {
  const int k = std::max(num_classes(pred), num_classes(truth));
  DenseMatrix c(k, k);
  for (std::size_t i = 0; i < pred.size(); ++i) c(pred[i], truth[i]) += 1.0;
  return c;
}

}  // namespace

std::vector<std::size_t> hungarian(const DenseMatrix& cost) {
  // Kuhn-Munkres with potentials; rows and columns are 1-indexed internally.
  const std::size_t n = cost.rows();
  if (cost.cols() != n) throw ShapeError("hungarian: cost matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n, 0);
  for (std::size_t j = 1; j <= n; ++j)
    if (p[j] != 0) assignment[p[j] - 1] = j - 1;
  return assignment;
}

std::vector<int> optimal_mapping(const std::vector<int>& pred, const std::vector<int>& truth) {
  check_inputs(pred, truth);
  DenseMatrix c = contingency(pred, truth);
  DenseMatrix cost = negate(c);  // maximize matches
  auto assignment = hungarian(cost);
  std::vector<int> map(c.rows());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<int>(assignment[i]);
  return map;
}

double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  auto map = optimal_mapping(pred, truth);
  std::size_t matched = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (map[pred[i]] == truth[i]) ++matched;
  return static_cast<double>(matched) / static_cast<double>(pred.size());
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth, bool arithmetic_mean) {
  check_inputs(pred, truth);
  const double n = static_cast<double>(pred.size());
  DenseMatrix c = contingency(pred, truth);
  std::vector<double> row(c.rows(), 0.0), col(c.cols(), 0.0);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      row[i] += c(i, j);
      col[j] += c(i, j);
    }
  double h_pred = 0.0, h_truth = 0.0, mi = 0.0;
  for (double r : row)
    if (r > 0) h_pred -= (r / n) * std::log(r / n);
  for (double cc : col)
    if (cc > 0) h_truth -= (cc / n) * std::log(cc / n);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      const double nij = c(i, j);
      if (nij > 0) mi += (nij / n) * std::log(n * nij / (row[i] * col[j]));
    }
  if (h_pred <= 0.0 && h_truth <= 0.0) return 1.0;  // both single-cluster, identical
  if (h_pred <= 0.0 || h_truth <= 0.0) return 0.0;
  const double denom =
      arithmetic_mean ? 0.5 * (h_pred + h_truth) : std::sqrt(h_pred * h_truth);
  return mi / denom;
}

double ari(const std::vector<int>& pred, const std::vector<int>& truth) {
  check_inputs(pred, truth);
  if (pred.size() < 2) throw std::invalid_argument("ari: need at least 2 samples");
  DenseMatrix c = contingency(pred, truth);
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  std::vector<double> row(c.rows(), 0.0), col(c.cols(), 0.0);
  double sum_cells = 0.0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      row[i] += c(i, j);
      col[j] += c(i, j);
      sum_cells += choose2(c(i, j));
    }
  double sum_rows = 0.0, sum_cols = 0.0;
  for (double r : row) sum_rows += choose2(r);
  for (double cc : col) sum_cols += choose2(cc);
  const double total = choose2(static_cast<double>(pred.size()));
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (sum_cells - expected) / (max_index - expected);
}

double macro_f1(const std::vector<int>& pred, const std::vector<int>& truth) {
  auto map = optimal_mapping(pred, truth);
  std::vector<int> mapped(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) mapped[i] = map[pred[i]];

  const int k = num_classes(truth);
  double f1_sum = 0.0;
  for (int c = 0; c < k; ++c) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (mapped[i] == c && truth[i] == c) ++tp;
      else if (mapped[i] == c) ++fp;
      else if (truth[i] == c) ++fn;
    }
    const double denom = 2.0 * tp + fp + fn;
    f1_sum += denom > 0.0 ? 2.0 * tp / denom : 0.0;
  }
  return f1_sum / static_cast<double>(k);
}

MetricReport aggregate(const std::vector<SeedMetrics>& per_seed) {
  if (per_seed.empty()) throw std::invalid_argument("aggregate: need at least one seed");
  MetricReport rep;
  rep.per_seed = per_seed;
  const double n = static_cast<double>(per_seed.size());
  auto stats = [&](auto field) {
    double mean = 0.0;
    for (const auto& s : per_seed) mean += s.*field;
    mean /= n;
    double var = 0.0;
    for (const auto& s : per_seed) var += (s.*field - mean) * (s.*field - mean);
    return std::pair<double, double>(mean, std::sqrt(var / n));
  };
  std::tie(rep.mean.acc, rep.stddev.acc) = stats(&SeedMetrics::acc);
  std::tie(rep.mean.nmi, rep.stddev.nmi) = stats(&SeedMetrics::nmi);
  std::tie(rep.mean.ari, rep.stddev.ari) = stats(&SeedMetrics::ari);
  std::tie(rep.mean.f1, rep.stddev.f1) = stats(&SeedMetrics::f1);
  return rep;
}

std::string format_mean_std(double mean, double stddev) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f±%.2f", mean * 100.0, stddev * 100.0);
  return buf;
}

SeedMetrics evaluate(const std::vector<int>& pred, const std::vector<int>& truth,
                     bool nmi_arithmetic) {
  return SeedMetrics{clustering_accuracy(pred, truth), nmi(pred, truth, nmi_arithmetic),
                     ari(pred, truth), macro_f1(pred, truth)};
}

}  // namespace ragc::metrics
