#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "matchbound/enumeration.hpp"
#include "matchbound/hypergraph.hpp"

using namespace matchbound;

namespace {

bool mentions(const std::vector<std::string>& msgs, const std::string& needle) {
  return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) {
    return m.find(needle) != std::string::npos;
  });
}

std::vector<Matching> all_matchings(const BipartiteHypergraph& h) {
  std::vector<Matching> out;
  enumerate_matchings(h, [&](const Matching& x) { out.push_back(x); });
  return out;
}

}  // namespace

TEST_CASE("validation accepts the tiny instances") {
  for (const auto& h : {tiny::h1(), tiny::hs(), tiny::ht(), tiny::h3()}) {
    const ValidationReport report = validate_hypergraph(h);
    CHECK(report.ok());
    CHECK(report.warnings.empty());
  }
}

TEST_CASE("validation reports structural violations") {
  BipartiteHypergraph h{2, 2, 3, {Edge{0, {0, 0}}}};
  CHECK(mentions(validate_hypergraph(h).violations, "repeated B-vertex"));

  h = {2, 2, 3, {Edge{0, {1, 0}}}};
  CHECK(mentions(validate_hypergraph(h).violations, "not increasing"));

  h = {2, 2, 3, {Edge{0, {0, 1, 2}}}};
  CHECK(mentions(validate_hypergraph(h).violations, "expected 2 B-vertices"));

  h = {2, 2, 3, {Edge{5, {0, 1}}}};
  CHECK(mentions(validate_hypergraph(h).violations, "A-vertex 5 out of range"));

  h = {2, 2, 3, {Edge{0, {0, 7}}}};
  CHECK(mentions(validate_hypergraph(h).violations, "B-vertex 7 out of range"));

  h = {2, 1, 3, {Edge{0, {0, 1}}, Edge{0, {0, 1}}}};
  CHECK(mentions(validate_hypergraph(h).violations, "duplicate edge"));

  h = {0, 1, 1, {}};
  CHECK(mentions(validate_hypergraph(h).violations, "k must be at least 1"));
}

TEST_CASE("validation warns about uncoverable A-vertices") {
  const BipartiteHypergraph h{2, 2, 2, {Edge{0, {0, 1}}}};
  const ValidationReport report = validate_hypergraph(h);
  CHECK(report.ok());
  REQUIRE(report.warnings.size() == 1);
  CHECK(mentions(report.warnings, "A-vertex 1 has no edges"));
}

TEST_CASE("degree stats on the canonical instances") {
  SUBCASE("order-3 cyclic encoding") {
    const DegreeStats s = degree_stats(tiny::h3());
    CHECK(s.q_avg == Rational(3));
    CHECK(s.d_max_b == 3);
    CHECK(s.delta2 == 1);
    CHECK(s.rho == Rational(2));
    CHECK(s.min_a_degree == 3);
  }
  SUBCASE("overlap pair instance") {
    const DegreeStats s = degree_stats(tiny::hs());
    CHECK(s.q_avg == Rational(3, 2));
    CHECK(s.d_max_b == 2);
    CHECK(s.delta2 == 2);  // edges 0 and 2 share the B-pair {0,1}
    CHECK(s.rho == Rational(2));
    CHECK(s.min_a_degree == 1);
  }
  SUBCASE("uncovered-vertex instance") {
    const DegreeStats s = degree_stats(tiny::ht());
    CHECK(s.q_avg == Rational(2));
    CHECK(s.d_max_b == 2);
    // the A-B pair (0, b1) lies in both edges
    CHECK(s.delta2 == 2);
    CHECK(s.rho == Rational(3));
  }
  SUBCASE("empty instance") {
    const DegreeStats s = degree_stats(BipartiteHypergraph{2, 0, 0, {}});
    CHECK(s.q_avg == Rational(0));
    CHECK(s.d_max_b == 0);
    CHECK(s.delta2 == 0);
    CHECK(s.rho == Rational(0));
  }
}

TEST_CASE("degree stats are invariant under edge reordering") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    BipartiteHypergraph h = tiny::random_instance(rng);
    const DegreeStats before = degree_stats(h);
    std::shuffle(h.edges.begin(), h.edges.end(), rng);
    const DegreeStats after = degree_stats(h);
    CHECK(before.q_avg == after.q_avg);
    CHECK(before.d_max_b == after.d_max_b);
    CHECK(before.delta2 == after.delta2);
    CHECK(before.rho == after.rho);
    CHECK(before.min_a_degree == after.min_a_degree);
  }
}

TEST_CASE("matching construction and predicates") {
  const BipartiteHypergraph h = tiny::hs();
  const Matching x = make_matching(h, {1, 0});
  CHECK(x.edge_indices == std::vector<int>{0, 1});
  CHECK(x.host_id == h.content_id());
  CHECK(is_matching(h, x));
  CHECK(is_a_perfect(h, x));
  CHECK(edges_by_a(h, x) == std::vector<int>{0, 1});

  // edges 0 and 2 share B-vertices
  CHECK_FALSE(is_matching(h, make_matching(h, {0, 2})));
  CHECK_FALSE(is_a_perfect(h, make_matching(h, {0})));

  CHECK_THROWS_AS((void)make_matching(h, {0, 9}), Error);
  CHECK_THROWS_AS((void)make_matching(h, {0, 0}), Error);

  // a matching is bound to the host it was made from
  const BipartiteHypergraph other = tiny::h3();
  CHECK_FALSE(is_matching(other, x));
}

TEST_CASE("empty matching is A-perfect exactly when A is empty") {
  const BipartiteHypergraph empty{2, 0, 0, {}};
  CHECK(is_a_perfect(empty, make_matching(empty, {})));
  const BipartiteHypergraph h = tiny::h1();
  CHECK_FALSE(is_a_perfect(h, make_matching(h, {})));
}

TEST_CASE("bad edge sets on the overlap instance") {
  const BipartiteHypergraph h = tiny::hs();
  const BadEdgeReport bad = bad_edge_sets(h, make_matching(h, {0, 1}));
  CHECK(bad.s_edges == std::vector<int>{2});
  CHECK(bad.t_edges.empty());
  CHECK(bad.per_a_s == std::vector<std::int64_t>{0, 1});
  CHECK(bad.per_a_t == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("bad edge sets on the uncovered instance") {
  const BipartiteHypergraph h = tiny::ht();
  SUBCASE("first edge matched leaves b2 uncovered") {
    const BadEdgeReport bad = bad_edge_sets(h, make_matching(h, {0}));
    CHECK(bad.s_edges.empty());
    CHECK(bad.t_edges == std::vector<int>{1});
    CHECK(bad.per_a_t == std::vector<std::int64_t>{1});
  }
  SUBCASE("second edge matched leaves b0 uncovered") {
    const BadEdgeReport bad = bad_edge_sets(h, make_matching(h, {1}));
    CHECK(bad.t_edges == std::vector<int>{0});
  }
}

TEST_CASE("cyclic order-3 matchings have no bad edges") {
  const BipartiteHypergraph h = tiny::h3();
  for (const Matching& x : all_matchings(h)) {
    const BadEdgeReport bad = bad_edge_sets(h, x);
    CHECK(bad.s_edges.empty());
    CHECK(bad.t_edges.empty());
  }
}

TEST_CASE("bad edge sets require an A-perfect matching") {
  const BipartiteHypergraph h = tiny::hs();
  CHECK_THROWS_WITH_AS(bad_edge_sets(h, make_matching(h, {0})),
                       doctest::Contains("not A-perfect"), Error);
}

TEST_CASE("incidence exponent on hand-checked cells") {
  const BipartiteHypergraph h3 = tiny::h3();
  // diagonal matching: cells (0,0), (1,1), (2,2) = edges 0, 4, 8
  const Matching diag = make_matching(h3, {0, 4, 8});
  REQUIRE(is_a_perfect(h3, diag));
  CHECK(incidence_exponent(h3, diag, 0, 0) == 0);  // own matching edge
  // cell (0,1) = edge 1 = {0; col 1, sym 4}: col 1 covered by row 1's edge,
  // sym 4 covered by row 2's edge
  CHECK(incidence_exponent(h3, diag, 0, 1) == 2);

  const BipartiteHypergraph hs = tiny::hs();
  const Matching x = make_matching(hs, {0, 1});
  CHECK(incidence_exponent(hs, x, 1, 2) == 1);  // edge h meets only X_{a0}
  CHECK(incidence_exponent(hs, x, 0, 0) == 0);
  CHECK_THROWS_WITH_AS(incidence_exponent(hs, x, 0, 2),
                       doctest::Contains("not incident"), Error);
}

TEST_CASE("bulk exponents agree with the single-edge computation") {
  std::mt19937_64 rng(11);
  int instances_with_matchings = 0;
  for (int trial = 0; trial < 80 && instances_with_matchings < 25; ++trial) {
    const BipartiteHypergraph h = tiny::random_instance(rng);
    const std::vector<Matching> xs = all_matchings(h);
    if (xs.empty()) continue;
    ++instances_with_matchings;
    for (const Matching& x : xs) {
      const std::vector<int> bulk = incidence_exponents(h, x);
      for (std::size_t i = 0; i < h.edges.size(); ++i)
        CHECK(bulk[i] == incidence_exponent(h, x, h.edges[i].a, static_cast<int>(i)));
    }
  }
  CHECK(instances_with_matchings >= 10);
}

TEST_CASE("good edges have exponent k minus the own-edge overlap") {
  // e outside {X_a}, S, T has its k B-vertices covered by distinct matching
  // edges; those covered by X_a itself drop out of the exponent's count.
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const BipartiteHypergraph h = tiny::random_instance(rng);
    for (const Matching& x : all_matchings(h)) {
      const BadEdgeReport bad = bad_edge_sets(h, x);
      const std::vector<int> exps = incidence_exponents(h, x);
      std::vector<char> is_bad(h.edges.size(), 0);
      for (int i : bad.s_edges) is_bad[static_cast<std::size_t>(i)] = 1;
      for (int i : bad.t_edges) is_bad[static_cast<std::size_t>(i)] = 1;
      for (int i : x.edge_indices) is_bad[static_cast<std::size_t>(i)] = 1;
      std::vector<int> own_edge(static_cast<std::size_t>(h.a_count), -1);
      for (int idx : x.edge_indices)
        own_edge[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(idx)].a)] = idx;
      for (std::size_t i = 0; i < h.edges.size(); ++i) {
        CHECK(exps[i] <= h.k);
        if (is_bad[i]) continue;
        const Edge& own =
            h.edges[static_cast<std::size_t>(own_edge[static_cast<std::size_t>(h.edges[i].a)])];
        int shared = 0;
        for (int b : h.edges[i].bs)
          if (std::find(own.bs.begin(), own.bs.end(), b) != own.bs.end()) ++shared;
        CHECK(exps[i] == h.k - shared);
      }
    }
  }
}

TEST_CASE("with codegree one every good edge has exponent exactly k") {
  std::mt19937_64 rng(29);
  std::vector<BipartiteHypergraph> pool{tiny::h3(),
                                        ls_to_hypergraph(tiny::random_square(4, rng)),
                                        ls_to_hypergraph(tiny::random_square(5, rng))};
  for (int trial = 0; trial < 40; ++trial) {
    const BipartiteHypergraph h = tiny::random_instance(rng);
    if (degree_stats(h).delta2 <= 1) pool.push_back(h);
  }
  for (const BipartiteHypergraph& h : pool) {
    for (const Matching& x : all_matchings(h)) {
      const BadEdgeReport bad = bad_edge_sets(h, x);
      const std::vector<int> exps = incidence_exponents(h, x);
      std::vector<char> is_bad(h.edges.size(), 0);
      for (int i : bad.s_edges) is_bad[static_cast<std::size_t>(i)] = 1;
      for (int i : bad.t_edges) is_bad[static_cast<std::size_t>(i)] = 1;
      for (int i : x.edge_indices) is_bad[static_cast<std::size_t>(i)] = 1;
      for (std::size_t i = 0; i < h.edges.size(); ++i)
        if (!is_bad[i]) CHECK(exps[i] == h.k);
    }
  }
}

TEST_CASE("per-a bad counts add up to the set sizes") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const BipartiteHypergraph h = tiny::random_instance(rng);
    for (const Matching& x : all_matchings(h)) {
      const BadEdgeReport bad = bad_edge_sets(h, x);
      std::int64_t s_total = 0;
      std::int64_t t_total = 0;
      for (std::int64_t v : bad.per_a_s) s_total += v;
      for (std::int64_t v : bad.per_a_t) t_total += v;
      CHECK(s_total == static_cast<std::int64_t>(bad.s_edges.size()));
      CHECK(t_total == static_cast<std::int64_t>(bad.t_edges.size()));
    }
  }
}

TEST_CASE("hypergraph text round trip") {
  for (const auto& h : {tiny::h1(), tiny::hs(), tiny::ht(), tiny::h3()}) {
    const std::string text = format_bipartite_hypergraph(h);
    const BipartiteHypergraph back = parse_bipartite_hypergraph(text);
    CHECK(back.k == h.k);
    CHECK(back.a_count == h.a_count);
    CHECK(back.b_count == h.b_count);
    CHECK(back.edges == h.edges);
    CHECK(format_bipartite_hypergraph(back) == text);
    CHECK(back.content_id() == h.content_id());
  }
}

TEST_CASE("hypergraph parser accepts comments and blank lines") {
  const BipartiteHypergraph h = parse_bipartite_hypergraph(
      "# overlap instance\n\n2 2 4 3   # header\n0 0 1\n\n1 2 3\n1 0 1 # last\n");
  CHECK(h.edges.size() == 3);
  CHECK(h.edges == tiny::hs().edges);
}

TEST_CASE("hypergraph parser rejects malformed input") {
  CHECK_THROWS_WITH_AS((void)parse_bipartite_hypergraph("2 2\n"),
                       doctest::Contains("header"), ParseError);
  CHECK_THROWS_WITH_AS((void)parse_bipartite_hypergraph("2 1 2 1\n0 1 0\n"),
                       doctest::Contains("strictly increasing"), ParseError);
  CHECK_THROWS_WITH_AS((void)parse_bipartite_hypergraph("2 1 2 1\n0 0 5\n"),
                       doctest::Contains("out of range"), ParseError);
  CHECK_THROWS_WITH_AS((void)parse_bipartite_hypergraph("2 1 2 2\n0 0 1\n"),
                       doctest::Contains("declares 2 edges"), ParseError);
  CHECK_THROWS_WITH_AS((void)parse_bipartite_hypergraph("2 1 2 1\n0 0\n"),
                       doctest::Contains("expected 2 B-vertices"), ParseError);
  CHECK_THROWS_WITH_AS(
      (void)parse_bipartite_hypergraph("2 1 2 2\n0 0 1\n0 0 1\n"),
      doctest::Contains("duplicate"), ParseError);
  CHECK_THROWS_AS((void)parse_bipartite_hypergraph(""), ParseError);
}

TEST_CASE("content id distinguishes shape and edge data") {
  const BipartiteHypergraph h = tiny::hs();
  BipartiteHypergraph other = h;
  other.edges[0].bs = {0, 2};
  CHECK(h.content_id() != other.content_id());
  BipartiteHypergraph padded = h;
  padded.b_count += 1;
  CHECK(h.content_id() != padded.content_id());
}
