#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "matchbound/constructions.hpp"
#include "matchbound/hypergraph.hpp"

// Canonical tiny instances used throughout the tests.
namespace tiny {

using matchbound::BipartiteHypergraph;
using matchbound::Edge;

// Single edge covering the only A-vertex: exactly one matching.
inline BipartiteHypergraph h1() {
  return {2, 1, 2, {Edge{0, {0, 1}}}};
}

// Two A-vertices; the forced matching {f, g} overlaps edge h twice, so
// S = {h} while every B-vertex is covered.
inline BipartiteHypergraph hs() {
  return {2, 2, 4, {Edge{0, {0, 1}}, Edge{1, {2, 3}}, Edge{1, {0, 1}}}};
}

// One A-vertex, three B-vertices: either matching edge leaves a B-vertex
// uncovered, so the other edge lands in T.
inline BipartiteHypergraph ht() {
  return {2, 1, 3, {Edge{0, {0, 1}}, Edge{0, {1, 2}}}};
}

// Order-3 cyclic table as a hypergraph: 9 edges, 3 matchings.
inline BipartiteHypergraph h3() {
  return matchbound::ls_to_hypergraph(matchbound::cayley_cyclic(3));
}

// Uniformly random small instance; degenerate shapes (empty, infeasible,
// isolated vertices) arise naturally.
inline BipartiteHypergraph random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k_d(1, 3);
  const int k = k_d(rng);
  std::uniform_int_distribution<int> a_d(0, 4);
  const int a_count = a_d(rng);
  std::uniform_int_distribution<int> b_d(k, 8);
  const int b_count = b_d(rng);
  std::uniform_int_distribution<int> m_d(0, 10);
  const int want = m_d(rng);

  std::set<std::pair<int, std::vector<int>>> seen;
  BipartiteHypergraph h{k, a_count, b_count, {}};
  if (a_count == 0) return h;
  std::uniform_int_distribution<int> pick_a(0, a_count - 1);
  std::uniform_int_distribution<int> pick_b(0, b_count - 1);
  for (int t = 0; t < want * 3 && static_cast<int>(h.edges.size()) < want; ++t) {
    std::set<int> bs;
    while (static_cast<int>(bs.size()) < k) bs.insert(pick_b(rng));
    std::pair<int, std::vector<int>> key{pick_a(rng),
                                         std::vector<int>(bs.begin(), bs.end())};
    if (!seen.insert(key).second) continue;
    h.edges.push_back(Edge{key.first, key.second});
  }
  return h;
}

// Random Latin square: first backtracking completion under a shuffled
// symbol preference per row.
inline matchbound::LatinSquare random_square(int n, std::mt19937_64& rng) {
  matchbound::LatinSquare l;
  l.n = n;
  l.cells.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  std::vector<std::vector<char>> row_used(static_cast<std::size_t>(n),
                                          std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<std::vector<char>> col_used = row_used;
  std::vector<std::vector<int>> prefs(static_cast<std::size_t>(n));
  for (auto& p : prefs) {
    p.resize(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) p[static_cast<std::size_t>(s)] = s;
    std::shuffle(p.begin(), p.end(), rng);
  }

  auto rec = [&](auto&& self, int cell) -> bool {
    if (cell == n * n) return true;
    const int r = cell / n;
    const int c = cell % n;
    for (int s : prefs[static_cast<std::size_t>(r)]) {
      if (row_used[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] ||
          col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)])
        continue;
      row_used[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = 1;
      col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] = 1;
      l.at(r, c) = s;
      if (self(self, cell + 1)) return true;
      row_used[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = 0;
      col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] = 0;
    }
    return false;
  };
  rec(rec, 0);
  return l;
}

}  // namespace tiny
