#pragma once

#include <cstdint>
#include <vector>

#include "ragc/config.hpp"
#include "ragc/matrix.hpp"

namespace ragc::csada {

/// Clustering snapshot for one epoch: pseudo labels, centers, confidence
/// scores, high-confidence index set, and the pseudo-label correlation matrix.
struct ClusterState {
  std::vector<int> labels;            // 0..K-1
  DenseMatrix centers;                // K x d
  std::vector<double> conf;           // softmax-normalized, sums to 1
  std::vector<std::size_t> high_conf; // M largest-confidence indices
  DenseMatrix q;                      // N x N binary
};

struct TauSchedule {
  double tau_start = 0.8;
  double tau_end = 0.2;
  std::size_t total_epochs = 400;
};

/// Z = (Z^a + Z^b)/2, detached.
DenseMatrix fuse_embeddings(const DenseMatrix& z_a, const DenseMatrix& z_b);

struct KmeansResult {
  std::vector<int> labels;
  DenseMatrix centers;
  double distortion = 0.0;
  std::vector<double> distortion_history;  // per Lloyd iteration, best restart
};

/// Lloyd's algorithm with kmeans++ seeding; empty clusters are re-seeded from
/// the point farthest from its center. Deterministic per seed. With
/// restarts > 1 the lowest-distortion run wins.
KmeansResult kmeans(const DenseMatrix& z, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 1);

/// softmax over i of -||z_i - center(label_i)||; closer to center = higher.
std::vector<double> confidence_scores(const DenseMatrix& z, const std::vector<int>& labels,
                                      const DenseMatrix& centers);

/// The round(N * (1 - tau)) highest-confidence indices; ties to lower index.
std::vector<std::size_t> select_high_confidence(const std::vector<double>& conf, double tau);

/// Linear interpolation tau_start -> tau_end over the run.
double tau_at(const TauSchedule& schedule, std::size_t epoch);

/// Q_ij = 1 iff labels[i] == labels[j].
DenseMatrix pseudo_label_correlation(const std::vector<int>& labels);

/// Weight modulation: 1 unless both endpoints are high-confidence, else
/// exp((1 - s_hat)^beta) on positive pairs and exp((1 - s_hat)^gamma) on
/// negative pairs, with s_hat the global min-max rescale of s.
DenseMatrix modulation_weights(const DenseMatrix& s, const DenseMatrix& q,
                               const std::vector<std::size_t>& high_conf, double beta,
                               double gamma);

/// Scalar form of the modulation branches, shared with tests.
double modulation_weight_scalar(double s_hat, bool positive_pair, double beta, double gamma);

}  // namespace ragc::csada
