#include "matchbound/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <limits>
#include <list>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "matchbound/errors.hpp"

namespace matchbound {

namespace {

using Clock = std::chrono::steady_clock;

void require_valid(const BipartiteHypergraph& h) {
  ValidationReport report = validate_hypergraph(h);
  if (!report.ok()) throw Error("invalid hypergraph: " + report.violations.front());
}

void require_valid(const LatinSquare& l) {
  ValidationReport report = validate_latin_square(l);
  if (!report.ok()) throw Error("invalid latin square: " + report.violations.front());
}

void require_valid(const UniformHypergraph& g) {
  ValidationReport report = validate_uniform_hypergraph(g);
  if (!report.ok()) throw Error("invalid hypergraph: " + report.violations.front());
}

// Counts one tick per search-tree node (root and leaves included). The local
// total feeds a shared counter under parallel runs so the budget covers the
// whole tree, and a cooperative cancel flag stops sibling workers.
struct Budget {
  std::uint64_t local = 0;
  std::uint64_t limit = 0;
  std::atomic<std::uint64_t>* shared = nullptr;
  std::atomic<bool>* cancel = nullptr;

  void tick() {
    ++local;
    const std::uint64_t total =
        shared ? shared->fetch_add(1, std::memory_order_relaxed) + 1 : local;
    if (total > limit) {
      if (cancel) cancel->store(true, std::memory_order_relaxed);
      throw BudgetError(total, limit);
    }
    if (cancel && cancel->load(std::memory_order_relaxed))
      throw BudgetError(total, limit);
  }
};

struct Core {
  const BipartiteHypergraph& h;
  std::vector<std::vector<int>> edges_of_a;

  explicit Core(const BipartiteHypergraph& hg)
      : h(hg), edges_of_a(static_cast<std::size_t>(hg.a_count)) {
    for (std::size_t i = 0; i < hg.edges.size(); ++i)
      edges_of_a[static_cast<std::size_t>(hg.edges[i].a)].push_back(static_cast<int>(i));
  }
};

struct Searcher {
  const Core& core;
  boost::dynamic_bitset<> b_used;
  std::vector<char> a_covered;
  int uncovered;
  Budget budget;

  Searcher(const Core& c, std::uint64_t max_nodes,
           std::atomic<std::uint64_t>* shared = nullptr,
           std::atomic<bool>* cancel = nullptr)
      : core(c),
        b_used(static_cast<std::size_t>(c.h.b_count)),
        a_covered(static_cast<std::size_t>(c.h.a_count), 0),
        uncovered(c.h.a_count),
        budget{0, max_nodes, shared, cancel} {}

  bool legal(const Edge& e) const {
    for (int b : e.bs)
      if (b_used.test(static_cast<std::size_t>(b))) return false;
    return true;
  }

  void apply(const Edge& e) {
    for (int b : e.bs) b_used.set(static_cast<std::size_t>(b));
    a_covered[static_cast<std::size_t>(e.a)] = 1;
    --uncovered;
  }

  void undo(const Edge& e) {
    for (int b : e.bs) b_used.reset(static_cast<std::size_t>(b));
    a_covered[static_cast<std::size_t>(e.a)] = 0;
    ++uncovered;
  }

  // Uncovered A-vertex with the fewest legal edges, ties to the lowest
  // index. Returns {-1, 0} when everything is covered.
  std::pair<int, int> select() const {
    int best_a = -1;
    int best_count = INT_MAX;
    for (int a = 0; a < core.h.a_count; ++a) {
      if (a_covered[static_cast<std::size_t>(a)]) continue;
      int count = 0;
      for (int ei : core.edges_of_a[static_cast<std::size_t>(a)]) {
        if (legal(core.h.edges[static_cast<std::size_t>(ei)]) && ++count >= best_count)
          break;
      }
      if (count < best_count) {
        best_count = count;
        best_a = a;
        if (count == 0) break;
      }
    }
    return {best_a, best_a < 0 ? 0 : best_count};
  }

  void count_rec(BigInt& out) {
    budget.tick();
    if (uncovered == 0) {
      ++out;
      return;
    }
    auto [a, nlegal] = select();
    if (nlegal == 0) return;
    for (int ei : core.edges_of_a[static_cast<std::size_t>(a)]) {
      const Edge& e = core.h.edges[static_cast<std::size_t>(ei)];
      if (!legal(e)) continue;
      apply(e);
      count_rec(out);
      undo(e);
    }
  }

  void enumerate_rec(std::vector<int>& chosen, std::uint64_t host,
                     const MatchingVisitor& visit, std::uint64_t& found) {
    budget.tick();
    if (uncovered == 0) {
      std::vector<int> sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      ++found;
      visit(Matching{std::move(sorted), host});
      return;
    }
    auto [a, nlegal] = select();
    if (nlegal == 0) return;
    for (int ei : core.edges_of_a[static_cast<std::size_t>(a)]) {
      const Edge& e = core.h.edges[static_cast<std::size_t>(ei)];
      if (!legal(e)) continue;
      apply(e);
      chosen.push_back(ei);
      enumerate_rec(chosen, host, visit, found);
      chosen.pop_back();
      undo(e);
    }
  }
};

void finish_report(CountReport& rep, Clock::time_point t0) {
  rep.ln_count = rep.count == 0 ? -std::numeric_limits<double>::infinity()
                                : ln_bigint(rep.count);
  rep.elapsed = Clock::now() - t0;
}

// Runs one job per root branch across `threads` workers and merges results
// with `merge` under a lock. Merge order never affects the totals.
template <typename Job>
void run_jobs(int threads, std::size_t job_count, const Job& job) {
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  std::atomic<bool> cancel{false};

  auto worker = [&]() {
    try {
      for (;;) {
        const std::size_t j = next.fetch_add(1);
        if (j >= job_count) break;
        job(j, mu, cancel);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!first_error) first_error = std::current_exception();
      cancel.store(true, std::memory_order_relaxed);
    }
  };

  std::vector<std::thread> pool;
  const int spawn = std::max(1, std::min<int>(threads, static_cast<int>(job_count)));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

CountReport count_a_perfect_matchings(const BipartiteHypergraph& h,
                                      const SearchLimits& limits) {
  const auto t0 = Clock::now();
  require_valid(h);
  const Core core(h);
  CountReport rep;
  const int threads = std::max(1, limits.threads);

  if (threads == 1 || h.a_count == 0) {
    Searcher s(core, limits.max_nodes);
    s.count_rec(rep.count);
    rep.nodes_visited = s.budget.local;
    finish_report(rep, t0);
    return rep;
  }

  // Root split: the root's branch edges become jobs; each worker runs its
  // subtree sequentially on a private state, so count and node totals match
  // the single-threaded run exactly.
  std::atomic<std::uint64_t> shared_nodes{1};  // the root itself
  if (1 > limits.max_nodes) throw BudgetError(1, limits.max_nodes);

  Searcher probe(core, limits.max_nodes);
  auto [root_a, root_legal] = probe.select();
  if (root_legal == 0) {
    rep.count = 0;
    rep.nodes_visited = 1;
    finish_report(rep, t0);
    return rep;
  }
  std::vector<int> jobs;
  for (int ei : core.edges_of_a[static_cast<std::size_t>(root_a)])
    if (probe.legal(core.h.edges[static_cast<std::size_t>(ei)])) jobs.push_back(ei);

  run_jobs(threads, jobs.size(),
           [&](std::size_t j, std::mutex& mu, std::atomic<bool>& cancel) {
             Searcher s(core, limits.max_nodes, &shared_nodes, &cancel);
             const Edge& e = core.h.edges[static_cast<std::size_t>(jobs[j])];
             BigInt sub = 0;
             s.apply(e);
             s.count_rec(sub);
             s.undo(e);
             std::lock_guard<std::mutex> lock(mu);
             rep.count += sub;
           });

  rep.nodes_visited = shared_nodes.load();
  finish_report(rep, t0);
  return rep;
}

std::uint64_t enumerate_matchings(const BipartiteHypergraph& h,
                                  const MatchingVisitor& visit,
                                  const SearchLimits& limits) {
  require_valid(h);
  const Core core(h);
  Searcher s(core, limits.max_nodes);
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(h.a_count));
  std::uint64_t found = 0;
  s.enumerate_rec(chosen, h.content_id(), visit, found);
  return found;
}

namespace {

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~0ull : (1ull << n) - 1;
}

struct TransversalCounter {
  const LatinSquare& l;
  Budget budget;

  void rec(int row, std::uint64_t cols, std::uint64_t syms, BigInt& out) {
    budget.tick();
    if (row == l.n) {
      ++out;
      return;
    }
    std::uint64_t avail = cols;
    while (avail) {
      const int c = std::countr_zero(avail);
      avail &= avail - 1;
      const std::uint64_t sbit = 1ull << l.at(row, c);
      if (syms & sbit) rec(row + 1, cols & ~(1ull << c), syms & ~sbit, out);
    }
  }

  // Same walk, but materializes the column choice per row for the visitor.
  template <typename OnLeaf>
  void rec_cells(int row, std::uint64_t cols, std::uint64_t syms,
                 std::vector<int>& pick, const OnLeaf& on_leaf) {
    budget.tick();
    if (row == l.n) {
      on_leaf(pick);
      return;
    }
    std::uint64_t avail = cols;
    while (avail) {
      const int c = std::countr_zero(avail);
      avail &= avail - 1;
      const std::uint64_t sbit = 1ull << l.at(row, c);
      if (syms & sbit) {
        pick[static_cast<std::size_t>(row)] = c;
        rec_cells(row + 1, cols & ~(1ull << c), syms & ~sbit, pick, on_leaf);
      }
    }
  }
};

}  // namespace

CountReport count_transversals(const LatinSquare& l, const SearchLimits& limits) {
  const auto t0 = Clock::now();
  require_valid(l);
  if (l.n > 64)
    throw Error("instance too large: order " + std::to_string(l.n) +
                " exceeds the bitmask counter limit 64");
  CountReport rep;
  const std::uint64_t full = low_mask(l.n);
  const int threads = std::max(1, limits.threads);

  if (threads == 1 || l.n <= 1) {
    TransversalCounter tc{l, Budget{0, limits.max_nodes, nullptr, nullptr}};
    tc.rec(0, full, full, rep.count);
    rep.nodes_visited = tc.budget.local;
    finish_report(rep, t0);
    return rep;
  }

  std::atomic<std::uint64_t> shared_nodes{1};
  if (1 > limits.max_nodes) throw BudgetError(1, limits.max_nodes);

  run_jobs(threads, static_cast<std::size_t>(l.n),
           [&](std::size_t j, std::mutex& mu, std::atomic<bool>& cancel) {
             const int c = static_cast<int>(j);
             TransversalCounter tc{l, Budget{0, limits.max_nodes, &shared_nodes, &cancel}};
             BigInt sub = 0;
             tc.rec(1, full & ~(1ull << c), full & ~(1ull << l.at(0, c)), sub);
             std::lock_guard<std::mutex> lock(mu);
             rep.count += sub;
           });

  rep.nodes_visited = shared_nodes.load();
  finish_report(rep, t0);
  return rep;
}

std::vector<std::vector<BigInt>> per_entry_transversal_counts(
    const LatinSquare& l, const SearchLimits& limits) {
  require_valid(l);
  if (l.n > limits.max_order)
    throw Error("instance too large: order " + std::to_string(l.n) +
                " exceeds the per-entry guard " + std::to_string(limits.max_order));

  const std::size_t n = static_cast<std::size_t>(l.n);
  std::vector<std::vector<BigInt>> matrix(n, std::vector<BigInt>(n, BigInt(0)));
  const std::uint64_t full = low_mask(l.n);
  const int threads = std::max(1, limits.threads);

  if (threads == 1 || l.n <= 1) {
    TransversalCounter tc{l, Budget{0, limits.max_nodes, nullptr, nullptr}};
    std::vector<int> pick(n, 0);
    tc.rec_cells(0, full, full, pick, [&](const std::vector<int>& p) {
      for (std::size_t r = 0; r < n; ++r)
        matrix[r][static_cast<std::size_t>(p[r])] += 1;
    });
    return matrix;
  }

  std::atomic<std::uint64_t> shared_nodes{1};
  if (1 > limits.max_nodes) throw BudgetError(1, limits.max_nodes);

  run_jobs(threads, n, [&](std::size_t j, std::mutex& mu, std::atomic<bool>& cancel) {
    const int c = static_cast<int>(j);
    TransversalCounter tc{l, Budget{0, limits.max_nodes, &shared_nodes, &cancel}};
    std::vector<std::vector<BigInt>> local(n, std::vector<BigInt>(n, BigInt(0)));
    std::vector<int> pick(n, 0);
    pick[0] = c;
    tc.rec_cells(1, full & ~(1ull << c), full & ~(1ull << l.at(0, c)), pick,
                 [&](const std::vector<int>& p) {
                   for (std::size_t r = 0; r < n; ++r)
                     local[r][static_cast<std::size_t>(p[r])] += 1;
                 });
    std::lock_guard<std::mutex> lock(mu);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t col = 0; col < n; ++col) matrix[r][col] += local[r][col];
  });

  return matrix;
}

CountReport count_proper_colorings(const UniformHypergraph& g, int q,
                                   const SearchLimits& limits) {
  return count_a_perfect_matchings(incidence_hypergraph(g, q), limits);
}

namespace {

struct DirectColoring {
  const UniformHypergraph& g;
  int q;
  std::uint64_t full;
  std::vector<std::uint64_t> used;  // per-vertex colors taken by incident edges
  std::vector<char> colored;
  int remaining;
  Budget budget;

  std::uint64_t legal_mask(const std::vector<int>& e) const {
    std::uint64_t taken = 0;
    for (int v : e) taken |= used[static_cast<std::size_t>(v)];
    return full & ~taken;
  }

  void rec(BigInt& out) {
    budget.tick();
    if (remaining == 0) {
      ++out;
      return;
    }
    int best = -1;
    int best_count = INT_MAX;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (colored[i]) continue;
      const int count = std::popcount(legal_mask(g.edges[i]));
      if (count < best_count) {
        best_count = count;
        best = static_cast<int>(i);
        if (count == 0) break;
      }
    }
    if (best_count == 0) return;
    const auto& e = g.edges[static_cast<std::size_t>(best)];
    std::uint64_t mask = legal_mask(e);
    colored[static_cast<std::size_t>(best)] = 1;
    --remaining;
    while (mask) {
      const int c = std::countr_zero(mask);
      mask &= mask - 1;
      const std::uint64_t bit = 1ull << c;
      // A proper partial coloring never has c on these vertices yet, so
      // clearing the bit on undo restores the state exactly.
      for (int v : e) used[static_cast<std::size_t>(v)] |= bit;
      rec(out);
      for (int v : e) used[static_cast<std::size_t>(v)] &= ~bit;
    }
    colored[static_cast<std::size_t>(best)] = 0;
    ++remaining;
  }
};

}  // namespace

CountReport count_proper_colorings_direct(const UniformHypergraph& g, int q,
                                          const SearchLimits& limits) {
  const auto t0 = Clock::now();
  require_valid(g);
  if (q < 0) throw Error("negative color count");
  if (q > 64) throw Error("color count exceeds the direct counter limit 64");

  CountReport rep;
  DirectColoring dc{g,
                    q,
                    low_mask(q),
                    std::vector<std::uint64_t>(static_cast<std::size_t>(g.n_vertices), 0),
                    std::vector<char>(g.edges.size(), 0),
                    static_cast<int>(g.edges.size()),
                    Budget{0, limits.max_nodes, nullptr, nullptr}};
  dc.rec(rep.count);
  rep.nodes_visited = dc.budget.local;
  finish_report(rep, t0);
  return rep;
}

namespace {

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& words) const {
    std::uint64_t state = 1469598103934665603ULL;
    for (std::uint64_t w : words) {
      for (int i = 0; i < 8; ++i) {
        state ^= (w >> (8 * i)) & 0xff;
        state *= 1099511628211ULL;
      }
    }
    return static_cast<std::size_t>(state);
  }
};

}  // namespace

struct MatchingSampler::Impl {
  BipartiteHypergraph h;
  SearchLimits limits;
  std::uint64_t host = 0;
  std::mt19937_64 rng;
  std::vector<std::vector<int>> edges_of_a;

  // occupancy words: B bits then covered-A bits, doubling as the memo key
  std::vector<std::uint64_t> words;
  std::size_t b_words = 0;
  int uncovered = 0;

  using LruList = std::list<std::pair<std::vector<std::uint64_t>, BigInt>>;
  LruList lru;
  std::unordered_map<std::vector<std::uint64_t>, LruList::iterator, WordsHash> memo;
  static constexpr std::size_t kMemoCap = 1u << 19;

  Budget budget;
  BigInt root_count = -1;  // lazily computed

  Impl(const BipartiteHypergraph& hg, std::uint64_t seed, const SearchLimits& lim)
      : h(hg), limits(lim), host(hg.content_id()), rng(seed),
        edges_of_a(static_cast<std::size_t>(hg.a_count)),
        budget{0, lim.max_nodes, nullptr, nullptr} {
    require_valid(h);
    for (std::size_t i = 0; i < h.edges.size(); ++i)
      edges_of_a[static_cast<std::size_t>(h.edges[i].a)].push_back(static_cast<int>(i));
    b_words = static_cast<std::size_t>(h.b_count + 63) / 64;
    reset();
  }

  void reset() {
    words.assign(b_words + static_cast<std::size_t>(h.a_count + 63) / 64, 0);
    uncovered = h.a_count;
  }

  bool b_test(int b) const {
    return words[static_cast<std::size_t>(b) / 64] >> (b % 64) & 1;
  }
  bool a_test(int a) const {
    return words[b_words + static_cast<std::size_t>(a) / 64] >> (a % 64) & 1;
  }

  bool legal(const Edge& e) const {
    for (int b : e.bs)
      if (b_test(b)) return false;
    return true;
  }

  void apply(const Edge& e) {
    for (int b : e.bs) words[static_cast<std::size_t>(b) / 64] |= 1ull << (b % 64);
    words[b_words + static_cast<std::size_t>(e.a) / 64] |= 1ull << (e.a % 64);
    --uncovered;
  }

  void undo(const Edge& e) {
    for (int b : e.bs) words[static_cast<std::size_t>(b) / 64] &= ~(1ull << (b % 64));
    words[b_words + static_cast<std::size_t>(e.a) / 64] &= ~(1ull << (e.a % 64));
    ++uncovered;
  }

  std::pair<int, int> select() const {
    int best_a = -1;
    int best_count = INT_MAX;
    for (int a = 0; a < h.a_count; ++a) {
      if (a_test(a)) continue;
      int count = 0;
      for (int ei : edges_of_a[static_cast<std::size_t>(a)]) {
        if (legal(h.edges[static_cast<std::size_t>(ei)]) && ++count >= best_count)
          break;
      }
      if (count < best_count) {
        best_count = count;
        best_a = a;
        if (count == 0) break;
      }
    }
    return {best_a, best_a < 0 ? 0 : best_count};
  }

  // Exact completion count of the current residual state, memoized across
  // steps and samples. Eviction only costs recomputation, never accuracy.
  BigInt residual() {
    budget.tick();
    if (uncovered == 0) return 1;
    if (auto it = memo.find(words); it != memo.end()) {
      lru.splice(lru.begin(), lru, it->second);
      return it->second->second;
    }
    BigInt total = 0;
    auto [a, nlegal] = select();
    if (nlegal > 0) {
      for (int ei : edges_of_a[static_cast<std::size_t>(a)]) {
        const Edge& e = h.edges[static_cast<std::size_t>(ei)];
        if (!legal(e)) continue;
        apply(e);
        total += residual();
        undo(e);
      }
    }
    lru.emplace_front(words, total);
    memo[words] = lru.begin();
    if (lru.size() > kMemoCap) {
      memo.erase(lru.back().first);
      lru.pop_back();
    }
    return total;
  }

  const BigInt& total() {
    if (root_count < 0) {
      reset();
      budget.local = 0;
      root_count = residual();
    }
    return root_count;
  }

  Matching sample() {
    if (total() == 0) throw Error("infeasible: no A-perfect matching to sample");
    reset();
    budget.local = 0;
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(h.a_count));
    while (uncovered > 0) {
      auto [a, nlegal] = select();
      std::vector<int> branch;
      std::vector<BigInt> weight;
      BigInt sum = 0;
      for (int ei : edges_of_a[static_cast<std::size_t>(a)]) {
        const Edge& e = h.edges[static_cast<std::size_t>(ei)];
        if (!legal(e)) continue;
        apply(e);
        BigInt w = residual();
        undo(e);
        if (w > 0) {
          branch.push_back(ei);
          weight.push_back(w);
          sum += w;
        }
      }
      // sum equals the residual count of the current state, positive by
      // induction from total() > 0.
      boost::random::uniform_int_distribution<BigInt> dist(BigInt(0), sum - 1);
      BigInt r = dist(rng);
      std::size_t pick = 0;
      BigInt cum = weight[0];
      while (cum <= r) cum += weight[++pick];
      apply(h.edges[static_cast<std::size_t>(branch[pick])]);
      chosen.push_back(branch[pick]);
    }
    std::sort(chosen.begin(), chosen.end());
    return Matching{std::move(chosen), host};
  }
};

MatchingSampler::MatchingSampler(const BipartiteHypergraph& h, std::uint64_t seed,
                                 const SearchLimits& limits)
    : impl_(std::make_unique<Impl>(h, seed, limits)) {}

MatchingSampler::~MatchingSampler() = default;
MatchingSampler::MatchingSampler(MatchingSampler&&) noexcept = default;
MatchingSampler& MatchingSampler::operator=(MatchingSampler&&) noexcept = default;

Matching MatchingSampler::sample() { return impl_->sample(); }

const BigInt& MatchingSampler::total_count() const { return impl_->total(); }

Matching sample_matching_uniform(const BipartiteHypergraph& h, std::uint64_t seed,
                                 const SearchLimits& limits) {
  return MatchingSampler(h, seed, limits).sample();
}

}  // namespace matchbound
