#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace oracles {

BigInt transversals_by_permutations(const LatinSquare& l) {
  std::vector<int> perm(static_cast<std::size_t>(l.n));
  std::iota(perm.begin(), perm.end(), 0);
  BigInt count = 0;
  std::vector<char> used(static_cast<std::size_t>(l.n));
  do {
    std::fill(used.begin(), used.end(), 0);
    bool ok = true;
    for (int r = 0; r < l.n && ok; ++r) {
      const int s = l.at(r, perm[static_cast<std::size_t>(r)]);
      if (used[static_cast<std::size_t>(s)]++) ok = false;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

namespace {

void latin_rows_rec(int n, std::vector<std::vector<int>>& rows,
                    std::vector<std::vector<char>>& col_used, BigInt& count) {
  if (static_cast<int>(rows.size()) == n) {
    ++count;
    return;
  }
  std::vector<int> row(static_cast<std::size_t>(n));
  std::iota(row.begin(), row.end(), 0);
  do {
    bool ok = true;
    for (int c = 0; c < n && ok; ++c)
      if (col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(row[c])])
        ok = false;
    if (!ok) continue;
    for (int c = 0; c < n; ++c)
      col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(row[c])] = 1;
    rows.push_back(row);
    latin_rows_rec(n, rows, col_used, count);
    rows.pop_back();
    for (int c = 0; c < n; ++c)
      col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(row[c])] = 0;
  } while (std::next_permutation(row.begin(), row.end()));
}

}  // namespace

BigInt latin_square_count(int n) {
  if (n == 0) return 1;
  std::vector<std::vector<int>> rows;
  std::vector<std::vector<char>> col_used(
      static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  BigInt count = 0;
  latin_rows_rec(n, rows, col_used, count);
  return count;
}

namespace {

void coloring_rec(const UniformHypergraph& g, int q, std::size_t i,
                  std::vector<int>& color, BigInt& count) {
  if (i == g.edges.size()) {
    ++count;
    return;
  }
  for (int c = 0; c < q; ++c) {
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) {
      if (color[j] != c) continue;
      for (int v : g.edges[j]) {
        if (std::find(g.edges[i].begin(), g.edges[i].end(), v) != g.edges[i].end()) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    color[i] = c;
    coloring_rec(g, q, i + 1, color, count);
  }
}

}  // namespace

BigInt colorings_by_assignment(const UniformHypergraph& g, int q) {
  std::vector<int> color(g.edges.size(), -1);
  BigInt count = 0;
  coloring_rec(g, q, 0, color, count);
  return count;
}

namespace {

void matchings_rec(const BipartiteHypergraph& h,
                   const std::vector<std::vector<int>>& by_a, int a,
                   std::vector<char>& b_free, BigInt& count) {
  if (a == h.a_count) {
    ++count;
    return;
  }
  for (int ei : by_a[static_cast<std::size_t>(a)]) {
    const auto& e = h.edges[static_cast<std::size_t>(ei)];
    bool ok = true;
    for (int b : e.bs)
      if (!b_free[static_cast<std::size_t>(b)]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (int b : e.bs) b_free[static_cast<std::size_t>(b)] = 0;
    matchings_rec(h, by_a, a + 1, b_free, count);
    for (int b : e.bs) b_free[static_cast<std::size_t>(b)] = 1;
  }
}

}  // namespace

BigInt matchings_by_a_order(const BipartiteHypergraph& h) {
  std::vector<std::vector<int>> by_a(static_cast<std::size_t>(h.a_count));
  for (std::size_t i = 0; i < h.edges.size(); ++i)
    by_a[static_cast<std::size_t>(h.edges[i].a)].push_back(static_cast<int>(i));
  std::vector<char> b_free(static_cast<std::size_t>(h.b_count), 1);
  BigInt count = 0;
  matchings_rec(h, by_a, 0, b_free, count);
  return count;
}

double log_integral_closed_k2(double a, double q) {
  return std::log(a + q) - 2.0 + 2.0 * std::sqrt(a / q) * std::atan(std::sqrt(q / a));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace oracles
