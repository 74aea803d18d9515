#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "matchbound/errors.hpp"

namespace matchbound {

using Rational = boost::rational<std::int64_t>;

// One hyperedge: a single A-side vertex plus k B-side vertices, the B part
// stored strictly increasing.
struct Edge {
  int a = 0;
  std::vector<int> bs;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// (k+1)-uniform hypergraph whose edges each meet the A side exactly once.
// A-vertices are 0..a_count-1, B-vertices 0..b_count-1.
struct BipartiteHypergraph {
  int k = 0;
  int a_count = 0;
  int b_count = 0;
  std::vector<Edge> edges;

  // Stable content hash; binds matchings to the instance they came from.
  std::uint64_t content_id() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

// Structural audit. Problems become report entries, never exceptions.
ValidationReport validate_hypergraph(const BipartiteHypergraph& h);

// Pairwise vertex-disjoint edge set, as sorted indices into the host's edge
// list, tagged with the host's content hash.
struct Matching {
  std::vector<int> edge_indices;
  std::uint64_t host_id = 0;
};

// Sorts, checks ranges and duplicates, stamps the host id. Does not check
// disjointness; use is_matching for that.
Matching make_matching(const BipartiteHypergraph& h, std::vector<int> edge_indices);

bool is_matching(const BipartiteHypergraph& h, const Matching& x);
bool is_a_perfect(const BipartiteHypergraph& h, const Matching& x);

// For an A-perfect matching: result[a] = index of the edge covering a.
std::vector<int> edges_by_a(const BipartiteHypergraph& h, const Matching& x);

struct DegreeStats {
  Rational q_avg{0};    // average degree over A
  int d_max_b = 0;      // maximum degree over B
  int delta2 = 0;       // maximum codegree over all unordered vertex pairs
  Rational rho{0};      // |B| / |A|
  int min_a_degree = 0;
};

DegreeStats degree_stats(const BipartiteHypergraph& h);

// S(X): edges meeting some matching edge other than themselves in >= 2
// B-vertices. T(X): edges containing a B-vertex left uncovered by X.
// per_a_* key each bad edge by its own A-vertex.
struct BadEdgeReport {
  std::vector<int> s_edges;
  std::vector<int> t_edges;
  std::vector<std::int64_t> per_a_s;
  std::vector<std::int64_t> per_a_t;
};

// Requires an A-perfect matching of h; throws Error otherwise.
BadEdgeReport bad_edge_sets(const BipartiteHypergraph& h, const Matching& x);

// |{a' != a : X_{a'} meets edge e}| for an edge e incident to a. Equals k
// exactly when e is neither X_a nor in S_a(X) nor in T_a(X).
int incidence_exponent(const BipartiteHypergraph& h, const Matching& x, int a,
                       int edge_index);

// incidence_exponent for every edge at its own A-vertex, in edge order.
std::vector<int> incidence_exponents(const BipartiteHypergraph& h, const Matching& x);

// Text format: header "k a_count b_count edge_count", then one
// "a b_1 ... b_k" line per edge with strictly increasing b's.
// '#' starts a comment; blank lines are skipped.
BipartiteHypergraph parse_bipartite_hypergraph(std::string_view text);
std::string format_bipartite_hypergraph(const BipartiteHypergraph& h);

}  // namespace matchbound
