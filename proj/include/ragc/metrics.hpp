#pragma once

#include <string>
#include <vector>

#include "ragc/matrix.hpp"

namespace ragc::metrics {

/// Solves min-cost perfect assignment on a square cost matrix in O(n^3).
/// Returns assignment[row] = column.
std::vector<std::size_t> hungarian(const DenseMatrix& cost);

/// Optimal bijective mapping between predicted and true cluster ids; used by
/// clustering_accuracy and macro_f1. map[pred_id] = truth_id.
std::vector<int> optimal_mapping(const std::vector<int>& pred, const std::vector<int>& truth);

double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);
double nmi(const std::vector<int>& pred, const std::vector<int>& truth,
           bool arithmetic_mean = false);
double ari(const std::vector<int>& pred, const std::vector<int>& truth);
double macro_f1(const std::vector<int>& pred, const std::vector<int>& truth);

struct SeedMetrics {
  double acc = 0.0, nmi = 0.0, ari = 0.0, f1 = 0.0;
};

struct MetricReport {
  std::vector<SeedMetrics> per_seed;
  SeedMetrics mean;
  SeedMetrics stddev;  // population formula over seeds
};

MetricReport aggregate(const std::vector<SeedMetrics>& per_seed);

/// "mm.mm±s.ss" with values reported as percentages.
std::string format_mean_std(double mean, double stddev);

SeedMetrics evaluate(const std::vector<int>& pred, const std::vector<int>& truth,
                     bool nmi_arithmetic = false);

}  // namespace ragc::metrics
