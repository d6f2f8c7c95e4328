#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "ragc/csada.hpp"

using namespace ragc;
using namespace ragc::csada;

TEST_CASE("fuse_embeddings averages the two views") {
  DenseMatrix z_a(1, 2, {1.0, 0.0});
  DenseMatrix z_b(1, 2, {0.0, 1.0});
  auto z = fuse_embeddings(z_a, z_b);
  CHECK(z(0, 0) == 0.5);
  CHECK(z(0, 1) == 0.5);
}

TEST_CASE("kmeans separates two obvious 1-D clusters") {
  DenseMatrix z(4, 1, {0.0, 0.1, 10.0, 10.1});
  auto result = kmeans(z, 2, 123);
  CHECK(result.labels[0] == result.labels[1]);
  CHECK(result.labels[2] == result.labels[3]);
  CHECK(result.labels[0] != result.labels[2]);
  std::vector<double> centers{result.centers(0, 0), result.centers(1, 0)};
  std::sort(centers.begin(), centers.end());
  CHECK(centers[0] == doctest::Approx(0.05));
  CHECK(centers[1] == doctest::Approx(10.05));
}

TEST_CASE("kmeans is deterministic per seed and restarts never hurt") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  DenseMatrix z(60, 3);
  for (std::size_t i = 0; i < z.size(); ++i) z.data()[i] = dist(rng);
  for (std::size_t i = 0; i < 20; ++i) z(i, 0) += 6.0;
  for (std::size_t i = 20; i < 40; ++i) z(i, 1) += 6.0;

  auto r1 = kmeans(z, 3, 42);
  auto r2 = kmeans(z, 3, 42);
  CHECK(r1.labels == r2.labels);
  CHECK(r1.distortion == r2.distortion);

  auto multi = kmeans(z, 3, 42, 8);
  CHECK(multi.distortion <= r1.distortion + 1e-12);
}

TEST_CASE("kmeans distortion history is non-increasing") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseMatrix z(40, 2);
  for (std::size_t i = 0; i < z.size(); ++i) z.data()[i] = dist(rng);
  auto result = kmeans(z, 4, 7);
  REQUIRE(!result.distortion_history.empty());
  for (std::size_t i = 1; i < result.distortion_history.size(); ++i)
    CHECK(result.distortion_history[i] <= result.distortion_history[i - 1] + 1e-12);
  CHECK(result.distortion == doctest::Approx(result.distortion_history.back()));
}

TEST_CASE("kmeans survives duplicate points without empty clusters") {
  DenseMatrix z(6, 1, {1.0, 1.0, 1.0, 1.0, 5.0, 5.0});
  auto result = kmeans(z, 3, 11);
  std::vector<int> counts(3, 0);
  for (int l : result.labels) {
    REQUIRE(l >= 0);
    REQUIRE(l < 3);
    ++counts[l];
  }
  // at most one cluster may stay empty when fewer distinct points than k exist;
  // here there are 2 distinct values and k=3, so the reseed picks a duplicate
  CHECK(std::count(counts.begin(), counts.end(), 0) <= 1);
}

TEST_CASE("confidence_scores is softmax of negative center distance") {
  // sample 0 sits exactly on its center, sample 1 at distance 1
  DenseMatrix z(2, 1, {0.0, 2.0});
  DenseMatrix centers(2, 1, {0.0, 3.0});
  std::vector<int> labels{0, 1};
  auto conf = confidence_scores(z, labels, centers);
  const double e0 = std::exp(0.0), e1 = std::exp(-1.0);
  CHECK(conf[0] == doctest::Approx(e0 / (e0 + e1)).epsilon(1e-10));
  CHECK(conf[1] == doctest::Approx(e1 / (e0 + e1)).epsilon(1e-10));
  CHECK(conf[0] + conf[1] == doctest::Approx(1.0));
  CHECK(conf[0] == doctest::Approx(0.7311).epsilon(1e-3));
  CHECK(conf[1] == doctest::Approx(0.2689).epsilon(1e-3));
}

TEST_CASE("select_high_confidence picks the M = round(N(1-tau)) largest") {
  std::vector<double> conf{0.4, 0.1, 0.3, 0.2};
  auto picked = select_high_confidence(conf, 0.5);  // M = 2
  REQUIRE(picked.size() == 2);
  std::sort(picked.begin(), picked.end());
  CHECK(picked[0] == 0);
  CHECK(picked[1] == 2);

  // round-half-up: N=4, tau=0.625 -> 4*0.375 = 1.5 -> M=2
  CHECK(select_high_confidence(conf, 0.625).size() == 2);
  // tau=0 keeps everything; tau outside [0,1) is rejected
  CHECK(select_high_confidence(conf, 0.0).size() == 4);
  CHECK_THROWS_AS(select_high_confidence(conf, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(select_high_confidence(conf, -0.1), std::invalid_argument);

  // ties go to the lower index
  std::vector<double> tied{0.25, 0.25, 0.25, 0.25};
  auto t = select_high_confidence(tied, 0.5);
  std::sort(t.begin(), t.end());
  CHECK(t == std::vector<std::size_t>{0, 1});
}

TEST_CASE("tau_at interpolates linearly over the run") {
  TauSchedule s{0.8, 0.2, 400};
  CHECK(tau_at(s, 0) == doctest::Approx(0.8));
  CHECK(tau_at(s, 399) == doctest::Approx(0.2));
  CHECK(tau_at(s, 200) == doctest::Approx(0.8 + (0.2 - 0.8) * 200.0 / 399.0).epsilon(1e-12));
  // strictly decreasing for start > end
  for (std::size_t e = 1; e < 400; ++e) CHECK(tau_at(s, e) < tau_at(s, e - 1));

  TauSchedule single{0.8, 0.2, 1};
  CHECK(tau_at(single, 0) == doctest::Approx(0.8));
}

TEST_CASE("pseudo_label_correlation marks same-label pairs") {
  std::vector<int> labels{0, 1, 0};
  auto q = pseudo_label_correlation(labels);
  DenseMatrix want(3, 3, {1, 0, 1, 0, 1, 0, 1, 0, 1});
  for (std::size_t i = 0; i < 9; ++i) CHECK(q.data()[i] == want.data()[i]);
}

TEST_CASE("modulation_weight_scalar matches the closed-form branches") {
  CHECK(modulation_weight_scalar(0.5, true, 0.5, 2.0) ==
        doctest::Approx(std::exp(std::sqrt(0.5))).epsilon(1e-12));
  CHECK(modulation_weight_scalar(0.5, true, 0.5, 2.0) == doctest::Approx(2.0281).epsilon(1e-4));
  CHECK(modulation_weight_scalar(0.5, false, 0.5, 2.0) ==
        doctest::Approx(std::exp(0.25)).epsilon(1e-12));
  CHECK(modulation_weight_scalar(0.5, false, 0.5, 2.0) == doctest::Approx(1.2840).epsilon(1e-4));
  // endpoints: s_hat = 1 gives weight 1, s_hat = 0 gives weight e, both branches
  CHECK(modulation_weight_scalar(1.0, true, 0.7, 3.0) == 1.0);
  CHECK(modulation_weight_scalar(1.0, false, 0.7, 3.0) == 1.0);
  CHECK(modulation_weight_scalar(0.0, true, 0.7, 3.0) == doctest::Approx(std::exp(1.0)));
  CHECK(modulation_weight_scalar(0.0, false, 0.7, 3.0) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("modulation_weights applies only to high-confidence pairs") {
  // s spans [0,2]; global min-max halves everything
  DenseMatrix s(3, 3, {2, 1, 0, 1, 2, 1, 0, 1, 2});
  std::vector<int> labels{0, 0, 1};
  auto q = pseudo_label_correlation(labels);
  std::vector<std::size_t> high{0, 1};
  const double beta = 0.5, gamma = 2.0;

  auto w = modulation_weights(s, q, high, beta, gamma);
  // node 2 is low-confidence: every pair touching it keeps weight 1
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(w(2, j) == 1.0);
    CHECK(w(j, 2) == 1.0);
  }
  // (0,1) is a positive high-confidence pair with s_hat = 0.5
  CHECK(w(0, 1) == doctest::Approx(modulation_weight_scalar(0.5, true, beta, gamma)));
  // (0,0) diagonal: positive pair at s_hat = 1 -> weight 1
  CHECK(w(0, 0) == doctest::Approx(1.0));

  // flipped labels make (0,1) a negative pair
  std::vector<int> flipped{0, 1, 1};
  auto w2 = modulation_weights(s, pseudo_label_correlation(flipped), high, beta, gamma);
  CHECK(w2(0, 1) == doctest::Approx(modulation_weight_scalar(0.5, false, beta, gamma)));

  // all weights at least 1
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w.data()[i] >= 1.0);
}
