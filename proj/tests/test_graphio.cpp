#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ragc/graphio.hpp"

using namespace ragc;
namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ragc_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}
}  // namespace

TEST_CASE("load_dataset on a minimal graph") {
  TempDir dir;
  write_file(dir.path / "features.csv", "1.0,2.0\n3.0,4.0\n5.0,6.0\n");
  write_file(dir.path / "edges.csv", "0,1\n");

  Graph g = load_dataset(dir.path.string());
  CHECK(g.n == 3);
  CHECK(g.x.rows() == 3);
  CHECK(g.x.cols() == 2);
  // symmetrized adjacency
  CHECK(g.a(0, 1) == 1.0);
  CHECK(g.a(1, 0) == 1.0);
  CHECK(g.a(0, 2) == 0.0);
  CHECK(g.a(2, 0) == 0.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(g.a(i, i) == 0.0);
  CHECK_FALSE(g.labels.has_value());
  CHECK(g.k == 0);
}

TEST_CASE("load_dataset with labels remaps to 0..K-1 and keeps raw values") {
  TempDir dir;
  write_file(dir.path / "features.csv", "1\n2\n3\n4\n");
  write_file(dir.path / "edges.csv", "0,1\n2,3\n");
  write_file(dir.path / "labels.csv", "7\n7\n3\n9\n");

  Graph g = load_dataset(dir.path.string());
  REQUIRE(g.labels.has_value());
  CHECK(g.k == 3);
  const auto& lab = *g.labels;
  // remap preserves distinctions
  CHECK(lab[0] == lab[1]);
  CHECK(lab[0] != lab[2]);
  CHECK(lab[2] != lab[3]);
  for (int v : lab) {
    CHECK(v >= 0);
    CHECK(v < 3);
  }
  REQUIRE(g.raw_labels.has_value());
  CHECK((*g.raw_labels)[0] == 7);
  CHECK((*g.raw_labels)[2] == 3);
  CHECK((*g.raw_labels)[3] == 9);
}

TEST_CASE("load_dataset duplicate edges and self-loops are normalized away") {
  TempDir dir;
  write_file(dir.path / "features.csv", "1\n2\n3\n");
  write_file(dir.path / "edges.csv", "0,1\n1,0\n0,1\n2,2\n");

  Graph g = load_dataset(dir.path.string());
  CHECK(g.a(0, 1) == 1.0);
  CHECK(g.a(1, 0) == 1.0);
  CHECK(g.a(2, 2) == 0.0);
}

TEST_CASE("load_dataset diagnostics carry file and line") {
  TempDir dir;
  write_file(dir.path / "features.csv", "1,2\n3,4\n5,6\n");

  SUBCASE("missing edges file") {
    CHECK_THROWS_AS(load_dataset(dir.path.string()), IoError);
  }

  SUBCASE("out-of-range endpoint") {
    write_file(dir.path / "edges.csv", "0,1\n0,7\n");
    try {
      load_dataset(dir.path.string());
      FAIL("expected IoError");
    } catch (const IoError& e) {
      std::string msg = e.what();
      CHECK(msg.find("edges.csv") != std::string::npos);
      CHECK(msg.find("2") != std::string::npos);  // line number
    }
  }

  SUBCASE("ragged feature rows") {
    write_file(dir.path / "features.csv", "1,2\n3\n5,6\n");
    write_file(dir.path / "edges.csv", "0,1\n");
    CHECK_THROWS_AS(load_dataset(dir.path.string()), IoError);
  }

  SUBCASE("non-numeric cell") {
    write_file(dir.path / "features.csv", "1,2\n3,x\n5,6\n");
    write_file(dir.path / "edges.csv", "0,1\n");
    CHECK_THROWS_AS(load_dataset(dir.path.string()), IoError);
  }

  SUBCASE("label count mismatch") {
    write_file(dir.path / "edges.csv", "0,1\n");
    write_file(dir.path / "labels.csv", "1\n2\n");
    CHECK_THROWS_AS(load_dataset(dir.path.string()), IoError);
  }
}

TEST_CASE("save and load round-trip features byte-identically") {
  TempDir dir;
  Graph g;
  g.n = 3;
  g.x = DenseMatrix(3, 2, {0.1, 1.0 / 3.0, -2.5e-7, 4.0, 1e17, 0.0});
  g.a = DenseMatrix(3, 3);
  g.a(0, 1) = g.a(1, 0) = 1.0;
  g.labels = std::vector<int>{0, 1, 1};
  g.raw_labels = std::vector<long long>{5, 9, 9};
  g.k = 2;

  save_dataset(g, dir.path.string());
  Graph back = load_dataset(dir.path.string());
  REQUIRE(back.x.size() == g.x.size());
  for (std::size_t i = 0; i < g.x.size(); ++i) CHECK(back.x.data()[i] == g.x.data()[i]);
  for (std::size_t i = 0; i < g.a.size(); ++i) CHECK(back.a.data()[i] == g.a.data()[i]);
  CHECK(*back.raw_labels == *g.raw_labels);
  CHECK(back.k == 2);

  // second round trip is byte-identical on disk
  std::ifstream f1(dir.path / "features.csv");
  std::string first((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  save_dataset(back, dir.path.string());
  std::ifstream f2(dir.path / "features.csv");
  std::string second((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(first == second);
}

TEST_CASE("normalized_operators on a 2-node single edge") {
  Graph g;
  g.n = 2;
  g.x = DenseMatrix(2, 1, 1.0);
  g.a = DenseMatrix(2, 2);
  g.a(0, 1) = g.a(1, 0) = 1.0;

  auto [a_tilde, l_tilde] = normalized_operators(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(a_tilde(i, j) == doctest::Approx(0.5));
  CHECK(l_tilde(0, 0) == doctest::Approx(0.5));
  CHECK(l_tilde(0, 1) == doctest::Approx(-0.5));
}

TEST_CASE("normalized_operators on an edgeless graph") {
  Graph g;
  g.n = 3;
  g.x = DenseMatrix(3, 1, 1.0);
  g.a = DenseMatrix(3, 3);

  auto [a_tilde, l_tilde] = normalized_operators(g);
  auto id = DenseMatrix::identity(3);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(a_tilde.data()[i] == doctest::Approx(id.data()[i]));
    CHECK(l_tilde.data()[i] == doctest::Approx(0.0));
  }
}

TEST_CASE("normalized_operators on the triangle") {
  Graph g;
  g.n = 3;
  g.x = DenseMatrix(3, 1, 1.0);
  g.a = DenseMatrix(3, 3, 1.0);
  for (std::size_t i = 0; i < 3; ++i) g.a(i, i) = 0.0;

  auto [a_tilde, l_tilde] = normalized_operators(g);
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(a_tilde.data()[i] == doctest::Approx(1.0 / 3.0));
  // A_tilde + L_tilde = I exactly
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(a_tilde(i, j) + l_tilde(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("normalized_operators symmetry and nonnegativity on random graphs") {
  SbmParams p;
  p.blocks = 2;
  p.per_block = 8;
  p.seed = 17;
  Graph g = generate_sbm(p);
  auto [a_tilde, l_tilde] = normalized_operators(g);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) {
      CHECK(a_tilde(i, j) >= 0.0);
      CHECK(a_tilde(i, j) == doctest::Approx(a_tilde(j, i)));
      CHECK(a_tilde(i, j) + l_tilde(i, j) == (i == j ? 1.0 : 0.0));
    }
}

TEST_CASE("generate_sbm extreme probabilities give disjoint cliques") {
  SbmParams p;
  p.blocks = 2;
  p.per_block = 3;
  p.p_in = 1.0;
  p.p_out = 0.0;
  p.seed = 5;
  Graph g = generate_sbm(p);
  REQUIRE(g.n == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const bool same_block = (i / 3) == (j / 3);
      CHECK(g.a(i, j) == ((same_block && i != j) ? 1.0 : 0.0));
    }
  REQUIRE(g.labels.has_value());
  CHECK(g.k == 2);
}

TEST_CASE("generate_sbm is deterministic per seed") {
  SbmParams p;
  p.seed = 99;
  p.blocks = 3;
  p.per_block = 10;
  Graph g1 = generate_sbm(p);
  Graph g2 = generate_sbm(p);
  for (std::size_t i = 0; i < g1.a.size(); ++i) CHECK(g1.a.data()[i] == g2.a.data()[i]);
  for (std::size_t i = 0; i < g1.x.size(); ++i) CHECK(g1.x.data()[i] == g2.x.data()[i]);
  p.seed = 100;
  Graph g3 = generate_sbm(p);
  bool any_diff = false;
  for (std::size_t i = 0; i < g1.x.size(); ++i)
    if (g1.x.data()[i] != g3.x.data()[i]) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("generate_sbm empirical within-block density tracks p_in") {
  SbmParams p;
  p.blocks = 3;
  p.per_block = 50;
  p.p_in = 0.3;
  p.p_out = 0.02;
  double density_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    p.seed = seed;
    Graph g = generate_sbm(p);
    double edges = 0, pairs = 0;
    for (std::size_t b = 0; b < p.blocks; ++b)
      for (std::size_t i = b * 50; i < (b + 1) * 50; ++i)
        for (std::size_t j = i + 1; j < (b + 1) * 50; ++j) {
          ++pairs;
          edges += g.a(i, j);
        }
    density_sum += edges / pairs;
  }
  CHECK(std::abs(density_sum / 20.0 - 0.3) < 0.05);
}

TEST_CASE("generate_sbm rejects invalid probabilities") {
  SbmParams p;
  p.p_in = 0.1;
  p.p_out = 0.5;  // p_out > p_in
  CHECK_THROWS_AS(generate_sbm(p), std::invalid_argument);
  p.p_in = 1.5;
  p.p_out = 0.0;
  CHECK_THROWS_AS(generate_sbm(p), std::invalid_argument);
}
