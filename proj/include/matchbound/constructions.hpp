#pragma once

#include <set>
#include <utility>

#include "matchbound/hypergraph.hpp"
#include "matchbound/search_limits.hpp"

namespace matchbound {

// n x n array over symbols 0..n-1, each appearing once per row and column.
struct LatinSquare {
  int n = 0;
  std::vector<int> cells;  // row-major
  int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * n + c]; }
  int& at(int r, int c) { return cells[static_cast<std::size_t>(r) * n + c]; }
};

using Cell = std::pair<int, int>;  // (row, column)
using CellSet = std::set<Cell>;

ValidationReport validate_latin_square(const LatinSquare& l);

// cells[r][c] = (r + c) mod n. Throws Error("empty order") for n <= 0.
LatinSquare cayley_cyclic(int n);

// k-uniform hypergraph on vertices 0..n_vertices-1.
struct UniformHypergraph {
  int k = 0;
  int n_vertices = 0;
  std::vector<std::vector<int>> edges;  // strictly increasing k-sets

  std::vector<int> degrees() const;
  bool is_regular() const;     // every vertex degree equal
  int regular_degree() const;  // meaningful only when is_regular()
  int max_codegree() const;    // over pairs of distinct vertices
};

ValidationReport validate_uniform_hypergraph(const UniformHypergraph& g);

// Rows become A-vertices; B holds columns 0..n-1 and symbols n..2n-1. Each
// non-excluded cell (r,c) with symbol s yields the edge {r; c, n+s}, emitted
// row-major. A-perfect matchings with excluded = {} are exactly the
// transversals of l.
BipartiteHypergraph ls_to_hypergraph(const LatinSquare& l, const CellSet& excluded = {});

// Cells lying on no transversal. Exhaustive per-entry counting, guarded by
// limits.max_order.
CellSet transversal_free_entries(const LatinSquare& l, const SearchLimits& limits = {});

// ls_to_hypergraph(l, transversal_free_entries(l)): dropping only dead cells
// preserves the transversal count.
BipartiteHypergraph pruned_hypergraph(const LatinSquare& l, const SearchLimits& limits = {});

// A-side = edges of g (by index), B-side = (vertex, color) pairs with
// (v, c) -> c * n_vertices + v. A-perfect matchings correspond one-to-one to
// proper q-edge-colorings of g.
BipartiteHypergraph incidence_hypergraph(const UniformHypergraph& g, int q);

// Disjoint union of `copies` complete bipartite graphs K_{d,d}, as a
// 2-uniform d-regular hypergraph on 2 * d * copies vertices.
UniformHypergraph kdd_union(int d, int copies);

// Latin square text: "n" then n rows of n symbols.
LatinSquare parse_latin_square(std::string_view text);
std::string format_latin_square(const LatinSquare& l);

// Uniform hypergraph text: "k n_vertices edge_count" then one strictly
// increasing k-set per line.
UniformHypergraph parse_uniform_hypergraph(std::string_view text);
std::string format_uniform_hypergraph(const UniformHypergraph& g);

}  // namespace matchbound
