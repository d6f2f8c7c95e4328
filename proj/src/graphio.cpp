#include "ragc/graphio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace ragc {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_double(const std::string& cell, const std::string& file, std::size_t lineno) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
  if (ec != std::errc{} || ptr != end)
    throw IoError(file + ":" + std::to_string(lineno) + ": non-numeric cell '" + cell + "'");
  return v;
}

long long parse_int(const std::string& cell, const std::string& file, std::size_t lineno) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
  if (ec != std::errc{} || ptr != end)
    throw IoError(file + ":" + std::to_string(lineno) + ": non-integer cell '" + cell + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  return cells;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("missing file: " + path);
  return f;
}

}  // namespace

Graph load_dataset(const std::string& directory) {
  const std::string fpath = directory + "/features.csv";
  const std::string epath = directory + "/edges.csv";
  const std::string lpath = directory + "/labels.csv";

  Graph g;
  {
    auto f = open_or_throw(fpath);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      line = strip_cr(line);
      if (line.empty()) continue;
      auto cells = split_csv(line);
      std::vector<double> row;
      row.reserve(cells.size());
      for (const auto& c : cells) row.push_back(parse_double(c, fpath, lineno));
      if (!rows.empty() && row.size() != rows.front().size())
        throw IoError(fpath + ":" + std::to_string(lineno) + ": ragged row, expected " +
                      std::to_string(rows.front().size()) + " columns, got " +
                      std::to_string(row.size()));
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError(fpath + ": no feature rows");
    g.n = rows.size();
    const std::size_t d = rows.front().size();
    g.x = DenseMatrix(g.n, d);
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = 0; j < d; ++j) g.x(i, j) = rows[i][j];
  }

  g.a = DenseMatrix(g.n, g.n);
  {
    auto f = open_or_throw(epath);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      line = strip_cr(line);
      if (line.empty()) continue;
      auto cells = split_csv(line);
      if (cells.size() != 2)
        throw IoError(epath + ":" + std::to_string(lineno) + ": expected 'src,dst'");
      const long long s = parse_int(cells[0], epath, lineno);
      const long long t = parse_int(cells[1], epath, lineno);
      if (s < 0 || t < 0 || s >= static_cast<long long>(g.n) || t >= static_cast<long long>(g.n))
        throw IoError(epath + ":" + std::to_string(lineno) + ": node index out of range for " +
                      std::to_string(g.n) + " nodes");
      if (s == t) continue;  // self-loops re-added via A + I
      g.a(s, t) = 1.0;
      g.a(t, s) = 1.0;
    }
  }

  if (std::filesystem::exists(lpath)) {
    auto f = open_or_throw(lpath);
    std::vector<long long> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      line = strip_cr(line);
      if (line.empty()) continue;
      raw.push_back(parse_int(line, lpath, lineno));
    }
    if (raw.size() != g.n)
      throw IoError(lpath + ": expected " + std::to_string(g.n) + " labels, got " +
                    std::to_string(raw.size()));
    std::map<long long, int> remap;
    for (long long v : raw) remap.emplace(v, 0);
    int next = 0;
    for (auto& [v, id] : remap) id = next++;
    std::vector<int> labels(g.n);
    for (std::size_t i = 0; i < g.n; ++i) labels[i] = remap.at(raw[i]);
    g.raw_labels = std::move(raw);
    g.labels = std::move(labels);
    g.k = remap.size();
  }
  return g;
}

void save_dataset(const Graph& g, const std::string& directory) {
  std::filesystem::create_directories(directory);
  {
    std::ofstream f(directory + "/features.csv");
    if (!f) throw IoError("cannot write " + directory + "/features.csv");
    char buf[64];
    for (std::size_t i = 0; i < g.x.rows(); ++i) {
      for (std::size_t j = 0; j < g.x.cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", g.x(i, j));
        f << (j ? "," : "") << buf;
      }
      f << '\n';
    }
  }
  {
    std::ofstream f(directory + "/edges.csv");
    if (!f) throw IoError("cannot write " + directory + "/edges.csv");
    for (std::size_t i = 0; i < g.a.rows(); ++i)
      for (std::size_t j = i + 1; j < g.a.cols(); ++j)
        if (g.a(i, j) != 0.0) f << i << ',' << j << '\n';
  }
  if (g.raw_labels || g.labels) {
    std::ofstream f(directory + "/labels.csv");
    if (!f) throw IoError("cannot write " + directory + "/labels.csv");
    if (g.raw_labels)
      for (long long v : *g.raw_labels) f << v << '\n';
    else
      for (int v : *g.labels) f << v << '\n';
  }
}

std::pair<DenseMatrix, DenseMatrix> normalized_operators(const Graph& g) {
  const std::size_t n = g.n;
  std::vector<double> inv_sqrt_deg(n);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 1.0;  // self-loop from A + I
    for (std::size_t j = 0; j < n; ++j) deg += g.a(i, j);
    inv_sqrt_deg[i] = 1.0 / std::sqrt(deg);
  }
  DenseMatrix a_tilde(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a_hat = g.a(i, j) + (i == j ? 1.0 : 0.0);
      a_tilde(i, j) = inv_sqrt_deg[i] * a_hat * inv_sqrt_deg[j];
    }
  DenseMatrix l_tilde = subtract(DenseMatrix::identity(n), a_tilde);
  return {std::move(a_tilde), std::move(l_tilde)};
}

Graph generate_sbm(const SbmParams& p) {
  if (p.p_out < 0.0 || p.p_in > 1.0 || p.p_out > p.p_in)
    throw std::invalid_argument("generate_sbm: require 0 <= p_out <= p_in <= 1");
  const std::size_t n = p.blocks * p.per_block;
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  Graph g;
  g.n = n;
  g.k = p.blocks;
  g.a = DenseMatrix(n, n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i / p.per_block);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double prob = labels[i] == labels[j] ? p.p_in : p.p_out;
      if (unif(rng) < prob) {
        g.a(i, j) = 1.0;
        g.a(j, i) = 1.0;
      }
    }

  g.x = DenseMatrix(n, p.feature_dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p.feature_dim; ++j) {
      const double block_mean =
          (j == static_cast<std::size_t>(labels[i]) % p.feature_dim) ? p.feature_shift : 0.0;
      g.x(i, j) = normal(rng) + block_mean;
    }

  std::vector<long long> raw(labels.begin(), labels.end());
  g.raw_labels = std::move(raw);
  g.labels = std::move(labels);
  return g;
}

}  // namespace ragc
