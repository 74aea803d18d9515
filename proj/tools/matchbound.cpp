#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchbound/bounds.hpp"
#include "matchbound/constructions.hpp"
#include "matchbound/enumeration.hpp"
#include "matchbound/verify.hpp"

using json = nlohmann::ordered_json;
using namespace matchbound;

namespace {

constexpr const char* kVersion = "1.0.0";

// Floats are canonicalized to 12 significant digits so reruns are
// byte-identical; non-finite values become null.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string rat(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

struct Cli {
  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t max_nodes = 1'000'000'000;
  int max_order = 12;
  double tol = -1;  // unset: each command applies its own default
  bool timing = false;

  json inputs = json::object();
  json results = json::object();

  SearchLimits limits() const {
    SearchLimits l;
    l.max_nodes = max_nodes;
    l.threads = threads;
    l.max_order = max_order;
    return l;
  }
  double tol_or(double dflt) const { return tol > 0 ? tol : dflt; }
  void note_input(const std::string& label, std::string_view bytes) {
    inputs[label] = fnv1a64(bytes);
  }
};

// Option values for every subcommand; each leaf reads only its own.
struct Opt {
  std::string square_path;
  std::string graph_path;
  std::string hyper_path;
  std::string out_path;
  std::string mode = "finite";
  std::vector<std::string> excludes;
  int cayley_n = 0;
  int gen_n = 0;
  int kdd_d = 0;
  int kdd_copies = 1;
  int q = 0;
  std::int64_t n = 0;
  int d = 0;
  int k = 0;
  int delta2 = 0;
  bool pruned = false;
  bool direct = false;
  std::uint64_t trials = 2000;
  std::uint64_t sampler_trials = 3000;
  std::uint64_t cap = 100000;
};

LatinSquare load_square(Cli& g, const Opt& o) {
  if (!o.square_path.empty()) {
    const std::string text = read_file(o.square_path);
    g.note_input(o.square_path, text);
    try {
      return parse_latin_square(text);
    } catch (const Error& e) {
      throw Error(o.square_path + ": " + e.what());
    }
  }
  const LatinSquare l = cayley_cyclic(o.cayley_n);
  g.note_input("cayley:" + std::to_string(o.cayley_n), format_latin_square(l));
  return l;
}

UniformHypergraph load_graph(Cli& g, const Opt& o) {
  const std::string text = read_file(o.graph_path);
  g.note_input(o.graph_path, text);
  try {
    return parse_uniform_hypergraph(text);
  } catch (const Error& e) {
    throw Error(o.graph_path + ": " + e.what());
  }
}

BipartiteHypergraph load_bipartite(Cli& g, const Opt& o) {
  if (!o.hyper_path.empty()) {
    const std::string text = read_file(o.hyper_path);
    g.note_input(o.hyper_path, text);
    try {
      return parse_bipartite_hypergraph(text);
    } catch (const Error& e) {
      throw Error(o.hyper_path + ": " + e.what());
    }
  }
  return ls_to_hypergraph(load_square(g, o));
}

CellSet parse_excludes(const std::vector<std::string>& items) {
  CellSet cells;
  for (const std::string& item : items) {
    int r = 0, c = 0;
    char extra = 0;
    if (std::sscanf(item.c_str(), "%d,%d%c", &r, &c, &extra) != 2)
      throw CLI::ValidationError("--exclude expects row,col, got '" + item + "'");
    cells.insert({r, c});
  }
  return cells;
}

void attach_artifact(Cli& g, const Opt& o, const std::string& content) {
  g.results["content"] = content;
  g.results["digest"] = fnv1a64(content);
  if (!o.out_path.empty()) {
    write_file(o.out_path, content);
    g.results["path"] = o.out_path;
  }
}

json count_payload(const CountReport& r) {
  json out;
  out["count"] = r.count.str();
  out["ln_count"] = num(r.ln_count);
  out["nodes_visited"] = r.nodes_visited;
  return out;
}

void run_gen_cayley(Cli& g, const Opt& o) {
  const LatinSquare l = cayley_cyclic(o.gen_n);
  g.results["order"] = l.n;
  attach_artifact(g, o, format_latin_square(l));
}

void run_gen_kdd(Cli& g, const Opt& o) {
  const UniformHypergraph u = kdd_union(o.kdd_d, o.kdd_copies);
  g.results["d"] = o.kdd_d;
  g.results["copies"] = o.kdd_copies;
  g.results["vertices"] = u.n_vertices;
  g.results["edge_count"] = u.edges.size();
  attach_artifact(g, o, format_uniform_hypergraph(u));
}

void run_encode_square(Cli& g, const Opt& o) {
  const LatinSquare l = load_square(g, o);
  CellSet excluded = parse_excludes(o.excludes);
  if (o.pruned)
    for (const Cell& cell : transversal_free_entries(l, g.limits())) excluded.insert(cell);
  const BipartiteHypergraph h = ls_to_hypergraph(l, excluded);
  g.results["order"] = l.n;
  g.results["a_count"] = h.a_count;
  g.results["b_count"] = h.b_count;
  g.results["k"] = h.k;
  g.results["edge_count"] = h.edges.size();
  json cells = json::array();
  for (const Cell& cell : excluded) cells.push_back({cell.first, cell.second});
  g.results["excluded_cells"] = cells;
  attach_artifact(g, o, format_bipartite_hypergraph(h));
}

void run_encode_incidence(Cli& g, const Opt& o) {
  const UniformHypergraph u = load_graph(g, o);
  const BipartiteHypergraph h = incidence_hypergraph(u, o.q);
  g.results["q"] = o.q;
  g.results["a_count"] = h.a_count;
  g.results["b_count"] = h.b_count;
  g.results["k"] = h.k;
  g.results["edge_count"] = h.edges.size();
  attach_artifact(g, o, format_bipartite_hypergraph(h));
}

void run_count_transversals(Cli& g, const Opt& o) {
  g.results = count_payload(count_transversals(load_square(g, o), g.limits()));
}

void run_count_matchings(Cli& g, const Opt& o) {
  g.results = count_payload(count_a_perfect_matchings(load_bipartite(g, o), g.limits()));
}

void run_count_colorings(Cli& g, const Opt& o) {
  const UniformHypergraph u = load_graph(g, o);
  const CountReport r = o.direct ? count_proper_colorings_direct(u, o.q, g.limits())
                                 : count_proper_colorings(u, o.q, g.limits());
  g.results["q"] = o.q;
  g.results["method"] = o.direct ? "direct" : "incidence";
  g.results.update(count_payload(r));
}

void run_count_per_entry(Cli& g, const Opt& o) {
  const LatinSquare l = load_square(g, o);
  const auto cells = per_entry_transversal_counts(l, g.limits());
  BigInt total = 0;
  json rows = json::array();
  for (const auto& row : cells) {
    json out_row = json::array();
    for (const BigInt& v : row) out_row.push_back(v.str());
    rows.push_back(std::move(out_row));
  }
  for (const BigInt& v : cells.empty() ? std::vector<BigInt>{} : cells.front()) total += v;
  g.results["order"] = l.n;
  g.results["total"] = total.str();
  g.results["cells"] = std::move(rows);
}

void run_bound_finite(Cli& g, const Opt& o) {
  const BipartiteHypergraph h = load_bipartite(g, o);
  const BoundParameters p = bound_parameters(h);
  const BoundReport r = finite_matching_bound(p, g.tol_or(1e-10));
  json params;
  params["a_count"] = p.a_count;
  params["k"] = p.k;
  params["q"] = num(p.q);
  params["d"] = num(p.d);
  params["delta2"] = p.delta2;
  params["rho"] = num(p.rho);
  params["s_bar"] = num(p.s_bar());
  params["t_bar"] = num(p.t_bar());
  g.results["parameters"] = std::move(params);
  g.results["ln_bound"] = num(r.ln_bound);
  g.results["integrand_constant"] = num(r.integrand_constant);
  g.results["quadrature_error_estimate"] = num(r.quadrature_error_estimate);
  g.results["method"] = to_string(r.method);
}

void run_bound_envelope(Cli& g, const Opt& o) {
  g.results["n"] = o.n;
  g.results["ln_bound_2117"] = num(transversal_bound_ln(o.n));
  g.results["ln_envelope_e2"] = num(reference_envelope_ln(o.n));
}

void run_bound_coloring(Cli& g, const Opt& o, bool from_graph) {
  std::int64_t n = o.n;
  int d = o.d, k = o.k, delta2 = o.delta2;
  if (from_graph) {
    const UniformHypergraph u = load_graph(g, o);
    if (!u.is_regular()) throw Error(o.graph_path + ": graph is not regular");
    n = u.n_vertices;
    d = u.regular_degree();
    k = u.k;
    delta2 = u.max_codegree();
  }
  const BoundMode mode =
      o.mode == "finite" ? BoundMode::finite : BoundMode::asymptotic;
  g.results["n"] = n;
  g.results["d"] = d;
  g.results["k"] = k;
  g.results["delta2"] = delta2;
  g.results["q"] = o.q;
  g.results["mode"] = o.mode;
  g.results["edge_count"] = n * d / k;
  g.results["ln_bound"] = num(coloring_bound_ln(n, d, k, delta2, o.q, mode, g.tol_or(1e-10)));
}

VerifyOptions verify_options(const Cli& g, const Opt& o) {
  VerifyOptions v;
  v.tol = g.tol_or(1e-9);
  v.exact_enumeration_cap = BigInt(o.cap);
  v.sample_trials = o.trials;
  v.seed = g.seed;
  v.limits = g.limits();
  return v;
}

void run_verify_lemma31(Cli& g, const Opt& o) {
  const Lemma31Report r = verify_lemma31(load_bipartite(g, o), verify_options(g, o));
  g.results["lhs_bits"] = num(r.lhs_bits);
  g.results["rhs_bits"] = num(r.rhs_bits);
  g.results["rhs_pre_jensen_bits"] = num(r.rhs_pre_jensen_bits);
  g.results["matching_count"] = r.matching_count.str();
  g.results["sampled"] = r.sampled;
  g.results["rhs_stderr"] = num(r.rhs_stderr);
  g.results["pass"] = r.pass;
}

void run_verify_lemma33(Cli& g, const Opt& o) {
  const Lemma33Report r = verify_lemma33(load_bipartite(g, o), verify_options(g, o));
  g.results["max_s_size"] = r.max_s_size;
  g.results["max_t_size"] = r.max_t_size;
  g.results["rhs_s"] = r.rhs_s;
  g.results["rhs_t"] = r.rhs_t;
  g.results["worst_s_slack"] = r.worst_s_slack;
  g.results["worst_t_slack"] = r.worst_t_slack;
  g.results["checked_matchings"] = r.checked_matchings;
  g.results["sampled"] = r.sampled;
  g.results["pass"] = r.pass;
}

void run_verify_dominance(Cli& g, const Opt& o) {
  const DominanceReport r = verify_bound_dominance(load_bipartite(g, o), verify_options(g, o));
  g.results["count"] = r.count.str();
  g.results["ln_count"] = num(r.ln_count);
  g.results["ln_bound"] = num(r.ln_bound);
  g.results["gap_per_a"] = num(r.gap_per_a);
  g.results["vacuous"] = r.vacuous;
  g.results["pass"] = r.pass;
}

void run_verify_sampler(Cli& g, const Opt& o) {
  const ChiSquareReport r =
      sampler_uniformity_test(load_bipartite(g, o), o.sampler_trials, g.seed, g.limits());
  g.results["statistic"] = num(r.statistic);
  g.results["threshold"] = num(r.threshold);
  g.results["dof"] = r.dof;
  g.results["matching_count"] = r.matching_count;
  g.results["trials"] = r.trials;
  g.results["pass"] = r.pass;
}

void run_analyze_square(Cli& g, const Opt& o) {
  const LatinSquare l = load_square(g, o);
  const SearchLimits lim = g.limits();
  const CountReport cnt = count_transversals(l, lim);
  const CellSet dead = transversal_free_entries(l, lim);
  const BipartiteHypergraph full = ls_to_hypergraph(l);
  const DegreeStats st = degree_stats(full);
  const BoundReport bound = finite_matching_bound(bound_parameters(full), g.tol_or(1e-10));

  VerifyOptions vo;
  vo.tol = g.tol_or(1e-9);
  vo.limits = lim;
  const DominanceReport dom = verify_bound_dominance(full, vo);

  g.results["order"] = l.n;
  g.results["count"] = cnt.count.str();
  g.results["ln_count"] = num(cnt.ln_count);
  g.results["nodes_visited"] = cnt.nodes_visited;
  json cells = json::array();
  for (const Cell& cell : dead) cells.push_back({cell.first, cell.second});
  g.results["transversal_free_cells"] = std::move(cells);
  g.results["pruned_edge_count"] = full.edges.size() - dead.size();
  json stats;
  stats["a_count"] = full.a_count;
  stats["b_count"] = full.b_count;
  stats["k"] = full.k;
  stats["edge_count"] = full.edges.size();
  stats["q_avg"] = rat(st.q_avg);
  stats["min_a_degree"] = st.min_a_degree;
  stats["d_max_b"] = st.d_max_b;
  stats["delta2"] = st.delta2;
  stats["rho"] = rat(st.rho);
  g.results["stats"] = std::move(stats);
  json b;
  b["ln_bound"] = num(bound.ln_bound);
  b["integrand_constant"] = num(bound.integrand_constant);
  b["quadrature_error_estimate"] = num(bound.quadrature_error_estimate);
  b["method"] = to_string(bound.method);
  g.results["bound"] = std::move(b);
  json d;
  d["pass"] = dom.pass;
  d["vacuous"] = dom.vacuous;
  d["gap_per_a"] = num(dom.gap_per_a);
  g.results["dominance"] = std::move(d);
}

void csv_escape(const std::string& s, std::string& out) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void flatten_csv(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten_csv(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) flatten_csv(value, prefix + "." + std::to_string(i++), out);
    return;
  }
  csv_escape(prefix, out);
  out += ',';
  if (j.is_string())
    csv_escape(j.get<std::string>(), out);
  else if (!j.is_null())
    csv_escape(j.dump(), out);
  out += '\n';
}

std::string echo_command(int argc, char** argv) {
  std::string echo = "matchbound";
  for (int i = 1; i < argc; ++i) {
    echo += ' ';
    echo += argv[i];
  }
  return echo;
}

}  // namespace

int main(int argc, char** argv) {
  Cli g;
  Opt o;

  CLI::App app{"exact matching counts, entropy-style upper bounds, and inequality checks"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed for sampled checks")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for counting")
      ->envname("MATCHBOUND_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-nodes", g.max_nodes, "search-node budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-order", g.max_order, "largest order for per-entry scans")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", g.tol, "numeric tolerance (default 1e-10 for bounds, 1e-9 for verify)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", g.timing, "include elapsed wall time in the report");

  const auto sub = [](CLI::App* parent, const char* name, const char* desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  const auto square_source = [&](CLI::App* cmd) {
    CLI::Option_group* src = cmd->add_option_group("source");
    src->add_option("--square", o.square_path, "Latin square file");
    src->add_option("--cayley", o.cayley_n, "order of a cyclic-group table")
        ->check(CLI::PositiveNumber);
    src->require_option(1);
  };
  const auto bipartite_source = [&](CLI::App* cmd) {
    CLI::Option_group* src = cmd->add_option_group("source");
    src->add_option("--hypergraph", o.hyper_path, "bipartite hypergraph file");
    src->add_option("--square", o.square_path, "Latin square file, encoded on the fly");
    src->add_option("--cayley", o.cayley_n, "order of a cyclic-group table, encoded on the fly")
        ->check(CLI::PositiveNumber);
    src->require_option(1);
  };

  CLI::App* gen = sub(&app, "gen", "produce instance files");
  gen->require_subcommand(1);
  CLI::App* gen_cayley = sub(gen, "cayley", "cyclic-group multiplication table");
  gen_cayley->add_option("--n", o.gen_n, "order")->required()->check(CLI::PositiveNumber);
  gen_cayley->add_option("--out", o.out_path, "write the table here");
  gen_cayley->callback([&] { run_gen_cayley(g, o); });
  CLI::App* gen_kdd = sub(gen, "kdd", "disjoint copies of the complete bipartite graph K_{d,d}");
  gen_kdd->add_option("--d", o.kdd_d, "side size")->required()->check(CLI::PositiveNumber);
  gen_kdd->add_option("--copies", o.kdd_copies, "number of disjoint copies")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_kdd->add_option("--out", o.out_path, "write the graph here");
  gen_kdd->callback([&] { run_gen_kdd(g, o); });

  CLI::App* encode = sub(&app, "encode", "build bipartite hypergraph encodings");
  encode->require_subcommand(1);
  CLI::App* enc_square = sub(encode, "square", "rows pick cells; columns and symbols are covered");
  square_source(enc_square);
  enc_square->add_flag("--pruned", o.pruned, "drop cells on no transversal");
  enc_square->add_option("--exclude", o.excludes, "cell row,col to drop (repeatable)");
  enc_square->add_option("--out", o.out_path, "write the encoding here");
  enc_square->callback([&] { run_encode_square(g, o); });
  CLI::App* enc_inc = sub(encode, "incidence", "edges pick colors; vertex-color pairs are covered");
  enc_inc->add_option("--graph", o.graph_path, "uniform hypergraph file")->required();
  enc_inc->add_option("--q", o.q, "number of colors")->required()->check(CLI::NonNegativeNumber);
  enc_inc->add_option("--out", o.out_path, "write the encoding here");
  enc_inc->callback([&] { run_encode_incidence(g, o); });

  CLI::App* count = sub(&app, "count", "exact counts by backtracking search");
  count->require_subcommand(1);
  CLI::App* cnt_tr = sub(count, "transversals", "transversals of a Latin square");
  square_source(cnt_tr);
  cnt_tr->callback([&] { run_count_transversals(g, o); });
  CLI::App* cnt_m = sub(count, "matchings", "A-perfect matchings of a bipartite hypergraph");
  bipartite_source(cnt_m);
  cnt_m->callback([&] { run_count_matchings(g, o); });
  CLI::App* cnt_c = sub(count, "colorings", "proper edge colorings of a uniform hypergraph");
  cnt_c->add_option("--graph", o.graph_path, "uniform hypergraph file")->required();
  cnt_c->add_option("--q", o.q, "number of colors")->required()->check(CLI::NonNegativeNumber);
  cnt_c->add_flag("--direct", o.direct, "color edges directly instead of via the encoding");
  cnt_c->callback([&] { run_count_colorings(g, o); });
  CLI::App* cnt_pe = sub(count, "per-entry", "transversals through each cell");
  square_source(cnt_pe);
  cnt_pe->callback([&] { run_count_per_entry(g, o); });

  CLI::App* bound = sub(&app, "bound", "upper bounds on counts");
  bound->require_subcommand(1);
  CLI::App* b_fin = sub(bound, "finite", "integral bound on A-perfect matchings");
  bipartite_source(b_fin);
  b_fin->callback([&] { run_bound_finite(g, o); });
  CLI::App* b_env = sub(bound, "transversal-envelope", "ln-scale transversal envelopes");
  b_env->add_option("--n", o.n, "square order")->required()->check(CLI::PositiveNumber);
  b_env->callback([&] { run_bound_envelope(g, o); });
  CLI::App* b_col = sub(bound, "coloring", "bound on proper edge colorings");
  auto* col_graph = b_col->add_option("--graph", o.graph_path, "regular uniform hypergraph file");
  auto* col_n = b_col->add_option("--n", o.n, "vertex count")->check(CLI::PositiveNumber);
  auto* col_d = b_col->add_option("--d", o.d, "vertex degree")->check(CLI::PositiveNumber);
  auto* col_k = b_col->add_option("--k", o.k, "edge size")->check(CLI::PositiveNumber);
  auto* col_d2 = b_col->add_option("--delta2", o.delta2, "codegree bound")
                     ->check(CLI::PositiveNumber);
  col_graph->excludes(col_n)->excludes(col_d)->excludes(col_k)->excludes(col_d2);
  b_col->add_option("--q", o.q, "number of colors")->required()->check(CLI::NonNegativeNumber);
  b_col->add_option("--mode", o.mode, "finite or asymptotic")
      ->check(CLI::IsMember({"finite", "asymptotic"}))
      ->capture_default_str();
  b_col->callback([&] {
    const bool from_graph = col_graph->count() > 0;
    if (!from_graph && (col_n->count() == 0 || col_d->count() == 0 || col_k->count() == 0 ||
                        col_d2->count() == 0))
      throw CLI::RequiredError("--graph or all of --n --d --k --delta2");
    run_bound_coloring(g, o, from_graph);
  });

  CLI::App* verify = sub(&app, "verify", "check the inequalities on an instance");
  verify->require_subcommand(1);
  CLI::App* v31 = sub(verify, "lemma31", "entropy upper bound on the matching count");
  bipartite_source(v31);
  v31->add_option("--trials", o.trials, "samples when enumeration is too large")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  v31->add_option("--cap", o.cap, "largest count enumerated exactly")->capture_default_str();
  v31->callback([&] { run_verify_lemma31(g, o); });
  CLI::App* v33 = sub(verify, "lemma33", "size bounds on the overlap and uncovered edge sets");
  bipartite_source(v33);
  v33->add_option("--trials", o.trials, "samples when enumeration is too large")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  v33->add_option("--cap", o.cap, "largest count enumerated exactly")->capture_default_str();
  v33->callback([&] { run_verify_lemma33(g, o); });
  CLI::App* vdom = sub(verify, "dominance", "exact count against the finite bound");
  bipartite_source(vdom);
  vdom->callback([&] { run_verify_dominance(g, o); });
  CLI::App* vsam = sub(verify, "sampler", "chi-square uniformity of the exact sampler");
  bipartite_source(vsam);
  vsam->add_option("--trials", o.sampler_trials, "number of samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vsam->callback([&] { run_verify_sampler(g, o); });

  CLI::App* analyze = sub(&app, "analyze", "one-shot instance reports");
  analyze->require_subcommand(1);
  CLI::App* a_sq = sub(analyze, "square", "count, dead cells, degree stats, bound, dominance");
  square_source(a_sq);
  a_sq->callback([&] { run_analyze_square(g, o); });

  const auto started = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  json report;
  report["command"] = echo_command(argc, argv);
  report["inputs"] = g.inputs;
  report["results"] = g.results;
  report["seed"] = g.seed;
  report["versions"] = {{"matchbound", kVersion}, {"report_format", 1}};
  if (g.timing) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    report["elapsed_seconds"] = num(elapsed.count());
  }

  std::string out;
  if (g.format == "csv")
    flatten_csv(report, "", out);
  else
    out = report.dump(2) + "\n";
  std::fwrite(out.data(), 1, out.size(), stdout);
  return 0;
}
