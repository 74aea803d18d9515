#include "matchbound/constructions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "matchbound/enumeration.hpp"

namespace matchbound {

ValidationReport validate_latin_square(const LatinSquare& l) {
  ValidationReport report;
  auto bad = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (l.n < 1) {
    bad("empty order");
    return report;
  }
  const std::size_t n = static_cast<std::size_t>(l.n);
  if (l.cells.size() != n * n) {
    bad("expected " + std::to_string(n * n) + " cells, got " +
        std::to_string(l.cells.size()));
    return report;
  }
  for (int r = 0; r < l.n; ++r)
    for (int c = 0; c < l.n; ++c) {
      int s = l.at(r, c);
      if (s < 0 || s >= l.n)
        bad("symbol " + std::to_string(s) + " out of range at row " +
            std::to_string(r) + " column " + std::to_string(c));
    }
  if (!report.ok()) return report;

  std::vector<char> seen(n, 0);
  for (int r = 0; r < l.n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < l.n; ++c) {
      int s = l.at(r, c);
      if (seen[static_cast<std::size_t>(s)]++)
        bad("row " + std::to_string(r) + " repeats symbol " + std::to_string(s));
    }
  }
  for (int c = 0; c < l.n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < l.n; ++r) {
      int s = l.at(r, c);
      if (seen[static_cast<std::size_t>(s)]++)
        bad("column " + std::to_string(c) + " repeats symbol " + std::to_string(s));
    }
  }
  return report;
}

LatinSquare cayley_cyclic(int n) {
  if (n <= 0) throw Error("empty order");
  LatinSquare l;
  l.n = n;
  l.cells.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) l.at(r, c) = (r + c) % n;
  return l;
}

std::vector<int> UniformHypergraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_vertices), 0);
  for (const auto& e : edges)
    for (int v : e) deg[static_cast<std::size_t>(v)]++;
  return deg;
}

bool UniformHypergraph::is_regular() const {
  std::vector<int> deg = degrees();
  return deg.empty() ||
         std::all_of(deg.begin(), deg.end(), [&](int d) { return d == deg[0]; });
}

int UniformHypergraph::regular_degree() const {
  std::vector<int> deg = degrees();
  return deg.empty() ? 0 : deg[0];
}

int UniformHypergraph::max_codegree() const {
  std::map<std::pair<int, int>, int> pair_count;
  int best = 0;
  for (const auto& e : edges)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        best = std::max(best, ++pair_count[{e[i], e[j]}]);
  return best;
}

ValidationReport validate_uniform_hypergraph(const UniformHypergraph& g) {
  ValidationReport report;
  auto bad = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (g.k < 1) bad("k must be at least 1, got " + std::to_string(g.k));
  if (g.n_vertices < 0) bad("negative vertex count");
  if (!report.ok()) return report;

  std::map<std::vector<int>, int> seen;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (static_cast<int>(e.size()) != g.k) {
      bad("edge " + std::to_string(i) + ": expected " + std::to_string(g.k) +
          " vertices, got " + std::to_string(e.size()));
      continue;
    }
    bool in_range = true;
    for (int v : e)
      if (v < 0 || v >= g.n_vertices) {
        bad("edge " + std::to_string(i) + ": vertex " + std::to_string(v) +
            " out of range");
        in_range = false;
      }
    if (!in_range) continue;
    for (std::size_t j = 1; j < e.size(); ++j)
      if (e[j] <= e[j - 1])
        bad("edge " + std::to_string(i) + ": vertices must be strictly increasing");
    if (seen[e]++) bad("edge " + std::to_string(i) + ": duplicate edge");
  }
  return report;
}

namespace {

void require_valid_square(const LatinSquare& l) {
  ValidationReport report = validate_latin_square(l);
  if (!report.ok()) throw Error("invalid latin square: " + report.violations.front());
}

void require_valid_uniform(const UniformHypergraph& g) {
  ValidationReport report = validate_uniform_hypergraph(g);
  if (!report.ok()) throw Error("invalid hypergraph: " + report.violations.front());
}

}  // namespace

BipartiteHypergraph ls_to_hypergraph(const LatinSquare& l, const CellSet& excluded) {
  require_valid_square(l);
  for (const Cell& cell : excluded)
    if (cell.first < 0 || cell.first >= l.n || cell.second < 0 || cell.second >= l.n)
      throw Error("excluded cell (" + std::to_string(cell.first) + "," +
                  std::to_string(cell.second) + ") out of range");

  BipartiteHypergraph h;
  h.k = 2;
  h.a_count = l.n;
  h.b_count = 2 * l.n;
  h.edges.reserve(static_cast<std::size_t>(l.n) * static_cast<std::size_t>(l.n) -
                  excluded.size());
  for (int r = 0; r < l.n; ++r)
    for (int c = 0; c < l.n; ++c) {
      if (excluded.count({r, c})) continue;
      h.edges.push_back(Edge{r, {c, l.n + l.at(r, c)}});
    }
  return h;
}

CellSet transversal_free_entries(const LatinSquare& l, const SearchLimits& limits) {
  require_valid_square(l);
  if (l.n > limits.max_order)
    throw Error("instance too large: order " + std::to_string(l.n) +
                " exceeds the per-entry guard " + std::to_string(limits.max_order));
  std::vector<std::vector<BigInt>> counts = per_entry_transversal_counts(l, limits);
  CellSet dead;
  for (int r = 0; r < l.n; ++r)
    for (int c = 0; c < l.n; ++c)
      if (counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 0)
        dead.insert({r, c});
  return dead;
}

BipartiteHypergraph pruned_hypergraph(const LatinSquare& l, const SearchLimits& limits) {
  return ls_to_hypergraph(l, transversal_free_entries(l, limits));
}

BipartiteHypergraph incidence_hypergraph(const UniformHypergraph& g, int q) {
  require_valid_uniform(g);
  if (q < 0) throw Error("negative color count");
  const long long b_total = static_cast<long long>(q) * g.n_vertices;
  if (b_total > 50000000) throw Error("color-vertex universe too large");

  BipartiteHypergraph h;
  h.k = g.k;
  h.a_count = static_cast<int>(g.edges.size());
  h.b_count = static_cast<int>(b_total);
  h.edges.reserve(g.edges.size() * static_cast<std::size_t>(q));
  for (int c = 0; c < q; ++c)
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      Edge e;
      e.a = static_cast<int>(i);
      e.bs.reserve(static_cast<std::size_t>(g.k));
      for (int v : g.edges[i]) e.bs.push_back(c * g.n_vertices + v);
      h.edges.push_back(std::move(e));
    }
  return h;
}

UniformHypergraph kdd_union(int d, int copies) {
  if (d < 1) throw Error("side size must be at least 1");
  if (copies < 1) throw Error("copy count must be at least 1");
  UniformHypergraph g;
  g.k = 2;
  g.n_vertices = 2 * d * copies;
  g.edges.reserve(static_cast<std::size_t>(copies) * d * d);
  for (int c = 0; c < copies; ++c) {
    const int base = 2 * d * c;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        g.edges.push_back({base + i, base + d + j});
  }
  return g;
}

LatinSquare parse_latin_square(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  LatinSquare l;
  bool have_header = false;
  int rows_read = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream fields(line);
    if (!have_header) {
      long long n;
      if (!(fields >> n)) continue;
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing data after order");
      if (n < 1) throw ParseError(line_no, "empty order");
      if (n > 10000) throw ParseError(line_no, "order out of supported range");
      l.n = static_cast<int>(n);
      l.cells.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
      have_header = true;
      continue;
    }
    int first;
    if (!(fields >> first)) continue;
    if (rows_read >= l.n) throw ParseError(line_no, "more rows than the order allows");
    l.at(rows_read, 0) = first;
    for (int c = 1; c < l.n; ++c) {
      int s;
      if (!(fields >> s))
        throw ParseError(line_no, "expected " + std::to_string(l.n) +
                                      " entries, got " + std::to_string(c));
      l.at(rows_read, c) = s;
    }
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing data after row");
    ++rows_read;
  }
  if (!have_header) throw ParseError(line_no, "missing order header");
  if (rows_read != l.n)
    throw ParseError(line_no, "expected " + std::to_string(l.n) + " rows, got " +
                                  std::to_string(rows_read));
  ValidationReport report = validate_latin_square(l);
  if (!report.ok()) throw Error(report.violations.front());
  return l;
}

std::string format_latin_square(const LatinSquare& l) {
  std::ostringstream out;
  out << l.n << '\n';
  for (int r = 0; r < l.n; ++r) {
    for (int c = 0; c < l.n; ++c) {
      if (c) out << ' ';
      out << l.at(r, c);
    }
    out << '\n';
  }
  return out.str();
}

UniformHypergraph parse_uniform_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  UniformHypergraph g;
  bool have_header = false;
  long long declared_edges = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream fields(line);
    if (!have_header) {
      long long k, n, m;
      if (!(fields >> k)) continue;
      if (!(fields >> n >> m))
        throw ParseError(line_no, "header needs k n_vertices edge_count");
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing data after header");
      if (k < 1) throw ParseError(line_no, "k must be at least 1");
      if (n < 0 || m < 0) throw ParseError(line_no, "negative header field");
      if (n > 10000000 || m > 10000000)
        throw ParseError(line_no, "header out of supported range");
      g.k = static_cast<int>(k);
      g.n_vertices = static_cast<int>(n);
      declared_edges = m;
      have_header = true;
      continue;
    }
    int first;
    if (!(fields >> first)) continue;
    if (static_cast<long long>(g.edges.size()) >= declared_edges)
      throw ParseError(line_no, "more edges than the header declares");
    std::vector<int> e{first};
    for (int i = 1; i < g.k; ++i) {
      int v;
      if (!(fields >> v))
        throw ParseError(line_no, "expected " + std::to_string(g.k) +
                                      " vertices, got " + std::to_string(i));
      e.push_back(v);
    }
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing data after edge");
    g.edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (static_cast<long long>(g.edges.size()) != declared_edges)
    throw ParseError(line_no, "header declares " + std::to_string(declared_edges) +
                                  " edges, found " + std::to_string(g.edges.size()));
  ValidationReport report = validate_uniform_hypergraph(g);
  if (!report.ok()) throw ParseError(line_no, report.violations.front());
  return g;
}

std::string format_uniform_hypergraph(const UniformHypergraph& g) {
  std::ostringstream out;
  out << g.k << ' ' << g.n_vertices << ' ' << g.edges.size() << '\n';
  for (const auto& e : g.edges) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out << ' ';
      out << e[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace matchbound
