#include "matchbound/hypergraph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace matchbound {

namespace {

struct Fnv1a {
  std::uint64_t state = 1469598103934665603ULL;
  void add_byte(unsigned char b) {
    state ^= b;
    state *= 1099511628211ULL;
  }
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) add_byte(static_cast<unsigned char>(v >> (8 * i)));
  }
};

std::string edge_name(int index) { return "edge " + std::to_string(index); }

}  // namespace

std::uint64_t BipartiteHypergraph::content_id() const {
  Fnv1a h;
  h.add(static_cast<std::uint64_t>(k));
  h.add(static_cast<std::uint64_t>(a_count));
  h.add(static_cast<std::uint64_t>(b_count));
  h.add(edges.size());
  for (const Edge& e : edges) {
    h.add(static_cast<std::uint64_t>(e.a));
    for (int b : e.bs) h.add(static_cast<std::uint64_t>(b) + 1);
  }
  return h.state;
}

ValidationReport validate_hypergraph(const BipartiteHypergraph& h) {
  ValidationReport report;
  auto bad = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (h.k < 1) bad("k must be at least 1, got " + std::to_string(h.k));
  if (h.a_count < 0) bad("negative a_count");
  if (h.b_count < 0) bad("negative b_count");
  if (!report.ok()) return report;

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(h.edges.size() * 2);
  std::vector<int> a_degree(static_cast<std::size_t>(h.a_count), 0);

  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    const Edge& e = h.edges[i];
    if (e.a < 0 || e.a >= h.a_count) {
      bad(edge_name(static_cast<int>(i)) + ": A-vertex " + std::to_string(e.a) +
          " out of range");
      continue;
    }
    a_degree[static_cast<std::size_t>(e.a)]++;
    if (static_cast<int>(e.bs.size()) != h.k) {
      bad(edge_name(static_cast<int>(i)) + ": expected " + std::to_string(h.k) +
          " B-vertices, got " + std::to_string(e.bs.size()));
      continue;
    }
    bool in_range = true;
    for (int b : e.bs) {
      if (b < 0 || b >= h.b_count) {
        bad(edge_name(static_cast<int>(i)) + ": B-vertex " + std::to_string(b) +
            " out of range");
        in_range = false;
      }
    }
    if (!in_range) continue;
    for (std::size_t j = 1; j < e.bs.size(); ++j) {
      if (e.bs[j] == e.bs[j - 1]) {
        bad(edge_name(static_cast<int>(i)) + ": repeated B-vertex " +
            std::to_string(e.bs[j]));
      } else if (e.bs[j] < e.bs[j - 1]) {
        bad(edge_name(static_cast<int>(i)) + ": B-vertices not increasing");
      }
    }
    Fnv1a key;
    key.add(static_cast<std::uint64_t>(e.a));
    for (int b : e.bs) key.add(static_cast<std::uint64_t>(b));
    if (!seen.insert(key.state).second) {
      // Hash collision between distinct edges is possible in principle;
      // confirm by scan before reporting.
      bool duplicate = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (h.edges[j] == e) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) bad(edge_name(static_cast<int>(i)) + ": duplicate edge");
    }
  }

  for (int a = 0; a < h.a_count; ++a) {
    if (a_degree[static_cast<std::size_t>(a)] == 0) {
      report.warnings.push_back("A-vertex " + std::to_string(a) +
                                " has no edges; no A-perfect matching exists");
    }
  }
  return report;
}

Matching make_matching(const BipartiteHypergraph& h, std::vector<int> edge_indices) {
  std::sort(edge_indices.begin(), edge_indices.end());
  for (std::size_t i = 0; i < edge_indices.size(); ++i) {
    int idx = edge_indices[i];
    if (idx < 0 || idx >= static_cast<int>(h.edges.size()))
      throw Error("matching refers to edge " + std::to_string(idx) +
                  " outside the host");
    if (i > 0 && edge_indices[i - 1] == idx)
      throw Error("matching repeats edge " + std::to_string(idx));
  }
  return Matching{std::move(edge_indices), h.content_id()};
}

bool is_matching(const BipartiteHypergraph& h, const Matching& x) {
  if (x.host_id != h.content_id()) return false;
  std::vector<char> a_used(static_cast<std::size_t>(h.a_count), 0);
  std::vector<char> b_used(static_cast<std::size_t>(h.b_count), 0);
  int prev = -1;
  for (int idx : x.edge_indices) {
    if (idx <= prev || idx >= static_cast<int>(h.edges.size())) return false;
    prev = idx;
    const Edge& e = h.edges[static_cast<std::size_t>(idx)];
    if (a_used[static_cast<std::size_t>(e.a)]) return false;
    a_used[static_cast<std::size_t>(e.a)] = 1;
    for (int b : e.bs) {
      if (b_used[static_cast<std::size_t>(b)]) return false;
      b_used[static_cast<std::size_t>(b)] = 1;
    }
  }
  return true;
}

bool is_a_perfect(const BipartiteHypergraph& h, const Matching& x) {
  return static_cast<int>(x.edge_indices.size()) == h.a_count && is_matching(h, x);
}

std::vector<int> edges_by_a(const BipartiteHypergraph& h, const Matching& x) {
  if (!is_a_perfect(h, x)) throw Error("matching not A-perfect for this host");
  std::vector<int> owner(static_cast<std::size_t>(h.a_count), -1);
  for (int idx : x.edge_indices)
    owner[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(idx)].a)] = idx;
  return owner;
}

DegreeStats degree_stats(const BipartiteHypergraph& h) {
  DegreeStats stats;
  std::vector<int> a_deg(static_cast<std::size_t>(h.a_count), 0);
  std::vector<int> b_deg(static_cast<std::size_t>(h.b_count), 0);
  // Vertex pairs live in one universe: A-vertex a -> a, B-vertex b -> a_count + b.
  std::unordered_map<std::uint64_t, int> pair_count;
  const std::uint64_t universe =
      static_cast<std::uint64_t>(h.a_count) + static_cast<std::uint64_t>(h.b_count);
  std::vector<std::uint64_t> verts;

  for (const Edge& e : h.edges) {
    a_deg[static_cast<std::size_t>(e.a)]++;
    verts.clear();
    verts.push_back(static_cast<std::uint64_t>(e.a));
    for (int b : e.bs) {
      b_deg[static_cast<std::size_t>(b)]++;
      verts.push_back(static_cast<std::uint64_t>(h.a_count) + static_cast<std::uint64_t>(b));
    }
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        std::uint64_t lo = std::min(verts[i], verts[j]);
        std::uint64_t hi = std::max(verts[i], verts[j]);
        int c = ++pair_count[lo * universe + hi];
        if (c > stats.delta2) stats.delta2 = c;
      }
  }

  if (h.a_count > 0) {
    stats.q_avg = Rational(static_cast<std::int64_t>(h.edges.size()), h.a_count);
    stats.rho = Rational(h.b_count, h.a_count);
    stats.min_a_degree = *std::min_element(a_deg.begin(), a_deg.end());
  }
  if (h.b_count > 0) stats.d_max_b = *std::max_element(b_deg.begin(), b_deg.end());
  return stats;
}

BadEdgeReport bad_edge_sets(const BipartiteHypergraph& h, const Matching& x) {
  if (!is_a_perfect(h, x)) throw Error("matching not A-perfect for this host");

  // cover[b] = the A-vertex whose matching edge uses b, or -1.
  std::vector<int> cover(static_cast<std::size_t>(h.b_count), -1);
  for (int idx : x.edge_indices) {
    const Edge& e = h.edges[static_cast<std::size_t>(idx)];
    for (int b : e.bs) cover[static_cast<std::size_t>(b)] = e.a;
  }
  std::vector<int> in_matching(h.edges.size(), 0);
  for (int idx : x.edge_indices) in_matching[static_cast<std::size_t>(idx)] = 1;

  BadEdgeReport report;
  report.per_a_s.assign(static_cast<std::size_t>(h.a_count), 0);
  report.per_a_t.assign(static_cast<std::size_t>(h.a_count), 0);

  std::vector<int> overlap(static_cast<std::size_t>(h.a_count), 0);
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    const Edge& e = h.edges[i];
    bool uncovered_b = false;
    bool heavy_overlap = false;
    for (int b : e.bs) {
      int owner = cover[static_cast<std::size_t>(b)];
      if (owner < 0) {
        uncovered_b = true;
      } else if (++overlap[static_cast<std::size_t>(owner)] == 2) {
        // e may meet X_{e.a} in >= 2 vertices only by being X_{e.a} itself.
        if (!(in_matching[i] && owner == e.a)) heavy_overlap = true;
      }
    }
    for (int b : e.bs) {
      int owner = cover[static_cast<std::size_t>(b)];
      if (owner >= 0) overlap[static_cast<std::size_t>(owner)] = 0;
    }
    if (heavy_overlap) {
      report.s_edges.push_back(static_cast<int>(i));
      report.per_a_s[static_cast<std::size_t>(e.a)]++;
    }
    if (uncovered_b) {
      report.t_edges.push_back(static_cast<int>(i));
      report.per_a_t[static_cast<std::size_t>(e.a)]++;
    }
  }
  return report;
}

int incidence_exponent(const BipartiteHypergraph& h, const Matching& x, int a,
                       int edge_index) {
  if (edge_index < 0 || edge_index >= static_cast<int>(h.edges.size()))
    throw Error("edge index out of range");
  const Edge& e = h.edges[static_cast<std::size_t>(edge_index)];
  if (e.a != a) throw Error("edge " + std::to_string(edge_index) +
                            " is not incident to A-vertex " + std::to_string(a));
  if (!is_a_perfect(h, x)) throw Error("matching not A-perfect for this host");

  std::vector<int> cover(static_cast<std::size_t>(h.b_count), -1);
  for (int idx : x.edge_indices) {
    const Edge& me = h.edges[static_cast<std::size_t>(idx)];
    for (int b : me.bs) cover[static_cast<std::size_t>(b)] = me.a;
  }
  std::vector<int> owners;
  for (int b : e.bs) {
    int owner = cover[static_cast<std::size_t>(b)];
    if (owner >= 0 && owner != a) owners.push_back(owner);
  }
  std::sort(owners.begin(), owners.end());
  owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
  return static_cast<int>(owners.size());
}

std::vector<int> incidence_exponents(const BipartiteHypergraph& h, const Matching& x) {
  if (!is_a_perfect(h, x)) throw Error("matching not A-perfect for this host");
  std::vector<int> cover(static_cast<std::size_t>(h.b_count), -1);
  for (int idx : x.edge_indices) {
    const Edge& me = h.edges[static_cast<std::size_t>(idx)];
    for (int b : me.bs) cover[static_cast<std::size_t>(b)] = me.a;
  }
  std::vector<int> result(h.edges.size(), 0);
  std::vector<char> mark(static_cast<std::size_t>(h.a_count), 0);
  std::vector<int> touched;
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    const Edge& e = h.edges[i];
    touched.clear();
    for (int b : e.bs) {
      int owner = cover[static_cast<std::size_t>(b)];
      if (owner >= 0 && owner != e.a && !mark[static_cast<std::size_t>(owner)]) {
        mark[static_cast<std::size_t>(owner)] = 1;
        touched.push_back(owner);
      }
    }
    result[i] = static_cast<int>(touched.size());
    for (int owner : touched) mark[static_cast<std::size_t>(owner)] = 0;
  }
  return result;
}

BipartiteHypergraph parse_bipartite_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  BipartiteHypergraph h;
  long long declared_edges = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream fields(line);
    if (!have_header) {
      long long k, a, b, m;
      if (!(fields >> k)) continue;  // blank or comment-only line
      if (!(fields >> a >> b >> m))
        throw ParseError(line_no, "header needs k a_count b_count edge_count");
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing data after header");
      if (k < 1) throw ParseError(line_no, "k must be at least 1");
      if (a < 0 || b < 0 || m < 0) throw ParseError(line_no, "negative header field");
      if (a > 1000000 || b > 10000000 || m > 10000000)
        throw ParseError(line_no, "header out of supported range");
      h.k = static_cast<int>(k);
      h.a_count = static_cast<int>(a);
      h.b_count = static_cast<int>(b);
      declared_edges = m;
      have_header = true;
      continue;
    }
    Edge e;
    if (!(fields >> e.a)) continue;
    if (static_cast<long long>(h.edges.size()) >= declared_edges)
      throw ParseError(line_no, "more edges than the header declares");
    if (e.a < 0 || e.a >= h.a_count)
      throw ParseError(line_no, "A-vertex " + std::to_string(e.a) + " out of range");
    e.bs.reserve(static_cast<std::size_t>(h.k));
    for (int i = 0; i < h.k; ++i) {
      int b;
      if (!(fields >> b))
        throw ParseError(line_no, "expected " + std::to_string(h.k) +
                                      " B-vertices, got " + std::to_string(i));
      if (b < 0 || b >= h.b_count)
        throw ParseError(line_no, "B-vertex " + std::to_string(b) + " out of range");
      if (!e.bs.empty() && b <= e.bs.back())
        throw ParseError(line_no, "B-vertices must be strictly increasing");
      e.bs.push_back(b);
    }
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing data after edge");
    h.edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (static_cast<long long>(h.edges.size()) != declared_edges)
    throw ParseError(line_no, "header declares " + std::to_string(declared_edges) +
                                  " edges, found " + std::to_string(h.edges.size()));
  ValidationReport report = validate_hypergraph(h);
  if (!report.ok()) throw ParseError(line_no, report.violations.front());
  return h;
}

std::string format_bipartite_hypergraph(const BipartiteHypergraph& h) {
  std::ostringstream out;
  out << h.k << ' ' << h.a_count << ' ' << h.b_count << ' ' << h.edges.size() << '\n';
  for (const Edge& e : h.edges) {
    out << e.a;
    for (int b : e.bs) out << ' ' << b;
    out << '\n';
  }
  return out.str();
}

}  // namespace matchbound
