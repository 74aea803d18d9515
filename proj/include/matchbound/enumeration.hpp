#pragma once

#include <chrono>
#include <functional>
#include <memory>

#include "matchbound/bigint.hpp"
#include "matchbound/constructions.hpp"
#include "matchbound/search_limits.hpp"

namespace matchbound {

struct CountReport {
  BigInt count;
  double ln_count = 0;  // natural log; -infinity when count == 0
  std::uint64_t nodes_visited = 0;
  std::chrono::duration<double> elapsed{0};
};

// Exact backtracking count. Branches on the uncovered A-vertex with the
// fewest legal edges (ties to the lowest index); splits the root across
// limits.threads workers with a deterministic merge, so count and
// nodes_visited are independent of the thread count.
CountReport count_a_perfect_matchings(const BipartiteHypergraph& h,
                                      const SearchLimits& limits = {});

// Row-by-row transversal count with column/symbol bitmasks (order <= 64).
CountReport count_transversals(const LatinSquare& l, const SearchLimits& limits = {});

// counts[r][c] = number of transversals through cell (r, c). Every row and
// column of the result sums to the total. Guarded by limits.max_order.
std::vector<std::vector<BigInt>> per_entry_transversal_counts(
    const LatinSquare& l, const SearchLimits& limits = {});

// Proper q-edge-colorings of g, counted as A-perfect matchings of
// incidence_hypergraph(g, q).
CountReport count_proper_colorings(const UniformHypergraph& g, int q,
                                   const SearchLimits& limits = {});

// Independent cross-check: colors edges of g directly with per-vertex color
// masks (q <= 64). Must agree with count_proper_colorings.
CountReport count_proper_colorings_direct(const UniformHypergraph& g, int q,
                                          const SearchLimits& limits = {});

using MatchingVisitor = std::function<void(const Matching&)>;

// Visits every A-perfect matching once, in the deterministic order of the
// sequential search. Returns the number visited.
std::uint64_t enumerate_matchings(const BipartiteHypergraph& h,
                                  const MatchingVisitor& visit,
                                  const SearchLimits& limits = {});

// Exactly uniform sampling: each step picks an edge with probability
// proportional to the exact completion count of the residual instance, so
// every A-perfect matching has probability 1/N. Residual counts are memoized
// across steps and samples.
class MatchingSampler {
 public:
  MatchingSampler(const BipartiteHypergraph& h, std::uint64_t seed,
                  const SearchLimits& limits = {});
  ~MatchingSampler();
  MatchingSampler(MatchingSampler&&) noexcept;
  MatchingSampler& operator=(MatchingSampler&&) noexcept;

  // Throws Error("infeasible...") when the instance has no A-perfect matching.
  Matching sample();

  const BigInt& total_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Matching sample_matching_uniform(const BipartiteHypergraph& h, std::uint64_t seed,
                                 const SearchLimits& limits = {});

}  // namespace matchbound
