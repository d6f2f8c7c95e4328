#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ragc/matrix.hpp"
#include "ragc/matrix_ref.hpp"

using namespace ragc;

namespace {
DenseMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed, double mag = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-mag, mag);
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}
}  // namespace

TEST_CASE("matmul basics") {
  DenseMatrix m(2, 2, {1.0, 2.0, 3.0, 4.0});
  auto id = DenseMatrix::identity(2);
  auto prod = matmul(id, m);
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(prod.data()[i] == m.data()[i]);

  DenseMatrix v(2, 1, {0.0, 1.0});
  auto mv = matmul(m, v);
  CHECK(mv(0, 0) == doctest::Approx(2.0));
  CHECK(mv(1, 0) == doctest::Approx(4.0));

  DenseMatrix a(3, 2), b(3, 2);
  CHECK_THROWS_AS(matmul(a, b), ShapeError);
}

TEST_CASE("parallel kernels match serial reference") {
  auto a = random_matrix(17, 23, 1), b = random_matrix(23, 11, 2);
  auto got = matmul(a, b);
  auto want = reference::matmul(a, b);
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got.data()[i] == doctest::Approx(want.data()[i]).epsilon(1e-12));

  auto c = random_matrix(9, 23, 3);
  auto got_nt = matmul_nt(a, c);
  auto want_nt = reference::matmul_nt(a, c);
  for (std::size_t i = 0; i < got_nt.size(); ++i)
    CHECK(got_nt.data()[i] == doctest::Approx(want_nt.data()[i]).epsilon(1e-12));

  auto d = random_matrix(17, 23, 4);
  auto got_h = hadamard(a, d);
  auto want_h = reference::hadamard(a, d);
  for (std::size_t i = 0; i < got_h.size(); ++i) CHECK(got_h.data()[i] == want_h.data()[i]);

  auto got_e = exp_elem(a);
  auto want_e = reference::exp_elem(a);
  for (std::size_t i = 0; i < got_e.size(); ++i) CHECK(got_e.data()[i] == want_e.data()[i]);

  auto got_m = minmax_normalize(a);
  auto want_m = reference::minmax_normalize(a);
  for (std::size_t i = 0; i < got_m.size(); ++i) CHECK(got_m.data()[i] == want_m.data()[i]);
}

TEST_CASE("matmul_tn agrees with explicit transpose") {
  auto a = random_matrix(7, 5, 11), b = random_matrix(7, 4, 12);
  auto got = matmul_tn(a, b);
  auto want = reference::matmul(transpose(a), b);
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got.data()[i] == doctest::Approx(want.data()[i]).epsilon(1e-12));
}

TEST_CASE("minmax_normalize") {
  DenseMatrix m(2, 2, {0.0, 5.0, 10.0, 5.0});
  auto out = minmax_normalize(m);
  CHECK(out(0, 0) == 0.0);
  CHECK(out(0, 1) == 0.5);
  CHECK(out(1, 0) == 1.0);
  CHECK(out(1, 1) == 0.5);

  DenseMatrix constant(3, 3, 7.0);
  auto zeros = minmax_normalize(constant);
  for (std::size_t i = 0; i < zeros.size(); ++i) CHECK(zeros.data()[i] == 0.0);

  DenseMatrix fixed(1, 3, {0.0, 0.25, 1.0});
  auto same = minmax_normalize(fixed);
  for (std::size_t i = 0; i < same.size(); ++i) CHECK(same.data()[i] == fixed.data()[i]);

  // output spans [0,1] exactly for non-constant input
  auto r = random_matrix(6, 6, 5);
  auto norm = minmax_normalize(r);
  double lo = 1e9, hi = -1e9;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    lo = std::min(lo, norm.data()[i]);
    hi = std::max(hi, norm.data()[i]);
  }
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
}

TEST_CASE("row_l2_normalize") {
  DenseMatrix m(1, 2, {3.0, 4.0});
  auto out = row_l2_normalize(m);
  CHECK(out(0, 0) == doctest::Approx(0.6));
  CHECK(out(0, 1) == doctest::Approx(0.8));

  DenseMatrix unit(2, 2, {1.0, 0.0, 0.0, 1.0});
  auto same = row_l2_normalize(unit);
  for (std::size_t i = 0; i < same.size(); ++i) CHECK(same.data()[i] == unit.data()[i]);

  DenseMatrix zero(1, 2);
  CHECK_THROWS_AS(row_l2_normalize(zero), DegenerateRowError);
  try {
    row_l2_normalize(zero);
  } catch (const DegenerateRowError& e) {
    CHECK(e.row == 0);
  }

  auto r = random_matrix(8, 5, 6);
  auto norms = row_norms(row_l2_normalize(r));
  for (double n : norms) CHECK(std::abs(n - 1.0) < 1e-10);
}

TEST_CASE("check_finite rejects NaN") {
  DenseMatrix m(1, 1, std::nan(""));
  CHECK_THROWS_AS(check_finite(m, "test"), NumericError);
}
