#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ragc/metrics.hpp"

using namespace ragc;
using namespace ragc::metrics;

TEST_CASE("hungarian solves small assignment problems") {
  // identity is optimal
  DenseMatrix cost(2, 2, {0, 1, 1, 0});
  auto assign = hungarian(cost);
  CHECK(assign[0] == 0);
  CHECK(assign[1] == 1);

  // forced swap
  DenseMatrix swap_cost(2, 2, {5, 1, 1, 5});
  auto swapped = hungarian(swap_cost);
  CHECK(swapped[0] == 1);
  CHECK(swapped[1] == 0);

  // 3x3 with known optimum: rows pick 1, 0, 2 for total 1+2+2 = 5
  DenseMatrix c3(3, 3, {4, 1, 3, 2, 0, 5, 3, 2, 2});
  auto a3 = hungarian(c3);
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) total += c3(i, a3[i]);
  CHECK(total == doctest::Approx(5.0));
}

TEST_CASE("hungarian matches brute force on random cost matrices") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 4);
    DenseMatrix cost(n, n);
    for (std::size_t i = 0; i < cost.size(); ++i) cost.data()[i] = dist(rng);
    auto assign = hungarian(cost);
    double got = 0.0;
    for (std::size_t i = 0; i < n; ++i) got += cost(i, assign[i]);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e18;
    do {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += cost(i, perm[i]);
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("clustering_accuracy frozen examples") {
  CHECK(clustering_accuracy({0, 1, 1}, {0, 0, 1}) == doctest::Approx(2.0 / 3.0));
  CHECK(clustering_accuracy({1, 0, 0}, {0, 1, 1}) == doctest::Approx(1.0));  // relabeling
  CHECK(clustering_accuracy({0, 0, 0, 0}, {0, 1, 2, 3}) == doctest::Approx(0.25));
}

TEST_CASE("nmi frozen examples") {
  CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nmi({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(nmi({0, 1, 2}, {2, 0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("ari frozen examples") {
  // independent partitions of 4 points: pair-count formula gives -1/2
  CHECK(ari({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(-0.5));
  CHECK(ari({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(ari({0, 1, 0, 1, 0, 1}, {0, 0, 1, 1, 2, 2}) < 0.5);
}

TEST_CASE("macro_f1 frozen example") {
  CHECK(macro_f1({0, 1, 1}, {0, 0, 1}) == doctest::Approx(2.0 / 3.0));
  CHECK(macro_f1({1, 0, 0}, {0, 1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("metrics agree with brute-force oracles on random labelings") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng() % 7;
    const int k = 2 + static_cast<int>(rng() % 3);
    std::vector<int> pred(n), truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng() % k);
      truth[i] = static_cast<int>(rng() % k);
    }
    // ensure every id below k appears so both sides agree on the label universe
    for (int c = 0; c < k; ++c) {
      pred[c % n] = c;
      truth[(c + 1) % n] = c;
    }
    CHECK(clustering_accuracy(pred, truth) ==
          doctest::Approx(oracles::brute_force_acc(pred, truth)).epsilon(1e-12));
    CHECK(nmi(pred, truth) ==
          doctest::Approx(oracles::brute_force_nmi(pred, truth)).epsilon(1e-9));
    CHECK(ari(pred, truth) ==
          doctest::Approx(oracles::brute_force_ari(pred, truth)).epsilon(1e-9));
    const double f1 = macro_f1(pred, truth);
    const auto candidates = oracles::brute_force_f1_candidates(pred, truth);
    bool matched = false;
    for (double c : candidates)
      if (std::abs(c - f1) < 1e-9) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("metric ranges and perfect-prediction fixed points") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 6;
    std::vector<int> pred(n), truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng() % 3);
      truth[i] = static_cast<int>(rng() % 3);
    }
    for (int c = 0; c < 3; ++c) {
      pred[c % n] = c;
      truth[(c + 1) % n] = c;
    }
    CHECK(clustering_accuracy(pred, truth) >= 0.0);
    CHECK(clustering_accuracy(pred, truth) <= 1.0);
    CHECK(nmi(pred, truth) >= 0.0);
    CHECK(nmi(pred, truth) <= 1.0 + 1e-12);
    CHECK(ari(pred, truth) <= 1.0 + 1e-12);
    CHECK(macro_f1(pred, truth) >= 0.0);
    CHECK(macro_f1(pred, truth) <= 1.0 + 1e-12);
    auto m = evaluate(truth, truth);
    CHECK(m.acc == doctest::Approx(1.0));
    CHECK(m.nmi == doctest::Approx(1.0));
    CHECK(m.ari == doctest::Approx(1.0));
    CHECK(m.f1 == doctest::Approx(1.0));
  }
}

TEST_CASE("aggregate uses population standard deviation") {
  std::vector<SeedMetrics> per_seed{{0.70, 0.60, 0.50, 0.40}, {0.80, 0.70, 0.60, 0.50}};
  auto report = aggregate(per_seed);
  CHECK(report.mean.acc == doctest::Approx(0.75));
  CHECK(report.stddev.acc == doctest::Approx(0.05));
  CHECK(report.mean.nmi == doctest::Approx(0.65));
  CHECK(report.stddev.f1 == doctest::Approx(0.05));
  CHECK(report.per_seed.size() == 2);

  auto single = aggregate({{0.5, 0.5, 0.5, 0.5}});
  CHECK(single.mean.acc == doctest::Approx(0.5));
  CHECK(single.stddev.acc == doctest::Approx(0.0));
}

TEST_CASE("format_mean_std reports percentages to two decimals") {
  CHECK(format_mean_std(0.75, 0.05) == "75.00±5.00");
  CHECK(format_mean_std(0.7977, 0.0129) == "79.77±1.29");
  CHECK(format_mean_std(1.0, 0.0) == "100.00±0.00");
}
