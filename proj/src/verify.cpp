#include "matchbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

namespace matchbound {

namespace {

double poly_log2(const std::vector<double>& coeff, double x) {
  double v = 0;
  for (std::size_t m = coeff.size(); m-- > 0;) v = v * x + coeff[m];
  return std::log2(v);
}

// Per-matching pieces of the entropy inequality's right side:
// degree-averaged integral scaled by |A| (the bound as stated) and the
// per-vertex integral sum before averaging (the tighter quantity).
struct MatchingIntegrals {
  double averaged;
  double pre_jensen;
};

MatchingIntegrals matching_integrals(const BipartiteHypergraph& h, const Matching& x,
                                     double quad_tol) {
  const std::vector<int> exps = incidence_exponents(h, x);
  const std::size_t degree_slots = static_cast<std::size_t>(h.k) + 1;
  std::vector<std::vector<double>> coeff(
      static_cast<std::size_t>(h.a_count), std::vector<double>(degree_slots, 0.0));
  std::vector<double> total(degree_slots, 0.0);
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    const std::size_t m = static_cast<std::size_t>(exps[i]);
    coeff[static_cast<std::size_t>(h.edges[i].a)][m] += 1;
    total[m] += 1;
  }

  const double a_count = h.a_count;
  MatchingIntegrals out{0, 0};
  out.averaged =
      a_count * adaptive_simpson(
                    [&](double t) { return poly_log2(total, t) - std::log2(a_count); },
                    0, 1, quad_tol)
                    .value;
  for (int a = 0; a < h.a_count; ++a) {
    const auto& row = coeff[static_cast<std::size_t>(a)];
    out.pre_jensen +=
        adaptive_simpson([&](double t) { return poly_log2(row, t); }, 0, 1, quad_tol)
            .value;
  }
  return out;
}

struct MeanAccumulator {
  double sum = 0;
  double sum_sq = 0;
  std::uint64_t n = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double stderr_of_mean() const {
    if (n < 2) return 0;
    const double nd = static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - sum * sum / nd) / (nd - 1));
    return std::sqrt(var / nd);
  }
};

}  // namespace

Lemma31Report verify_lemma31(const BipartiteHypergraph& h, const VerifyOptions& opt) {
  const CountReport cr = count_a_perfect_matchings(h, opt.limits);
  if (cr.count == 0) throw Error("infeasible: no A-perfect matching");

  Lemma31Report rep;
  rep.matching_count = cr.count;
  rep.lhs_bits = log2_bigint(cr.count);
  const double quad_tol = std::min(opt.tol, 1e-9);

  MeanAccumulator rhs;
  MeanAccumulator pre;
  if (cr.count <= opt.exact_enumeration_cap) {
    enumerate_matchings(
        h,
        [&](const Matching& x) {
          const MatchingIntegrals mi = matching_integrals(h, x, quad_tol);
          rhs.add(mi.averaged);
          pre.add(mi.pre_jensen);
        },
        opt.limits);
    rep.rhs_bits = rhs.mean();
    rep.rhs_pre_jensen_bits = pre.mean();
    rep.pass = rep.lhs_bits <= rep.rhs_bits + opt.tol;
  } else {
    if (opt.sample_trials < 2) throw Error("sampled mode needs at least 2 trials");
    MatchingSampler sampler(h, opt.seed, opt.limits);
    for (std::uint64_t t = 0; t < opt.sample_trials; ++t) {
      const MatchingIntegrals mi = matching_integrals(h, sampler.sample(), quad_tol);
      rhs.add(mi.averaged);
      pre.add(mi.pre_jensen);
    }
    rep.sampled = true;
    rep.rhs_bits = rhs.mean();
    rep.rhs_pre_jensen_bits = pre.mean();
    rep.rhs_stderr = rhs.stderr_of_mean();
    rep.pass = rep.lhs_bits <= rep.rhs_bits + 3 * rep.rhs_stderr + opt.tol;
  }
  return rep;
}

Lemma33Report verify_lemma33(const BipartiteHypergraph& h, const VerifyOptions& opt) {
  const CountReport cr = count_a_perfect_matchings(h, opt.limits);
  if (cr.count == 0) throw Error("infeasible: no A-perfect matching");
  const DegreeStats stats = degree_stats(h);

  Lemma33Report rep;
  const std::int64_t pairs_per_edge =
      static_cast<std::int64_t>(h.k) * (h.k - 1) / 2;
  rep.rhs_s = static_cast<std::int64_t>(h.a_count) * pairs_per_edge *
              std::max(0, stats.delta2 - 1);
  rep.rhs_t = (static_cast<std::int64_t>(h.b_count) -
               static_cast<std::int64_t>(h.k) * h.a_count) *
              stats.d_max_b;

  auto absorb = [&](const Matching& x) {
    const BadEdgeReport bad = bad_edge_sets(h, x);
    rep.max_s_size = std::max(rep.max_s_size,
                              static_cast<std::int64_t>(bad.s_edges.size()));
    rep.max_t_size = std::max(rep.max_t_size,
                              static_cast<std::int64_t>(bad.t_edges.size()));
    ++rep.checked_matchings;
  };

  if (cr.count <= opt.exact_enumeration_cap) {
    enumerate_matchings(h, absorb, opt.limits);
  } else {
    if (opt.sample_trials < 1) throw Error("sampled mode needs at least 1 trial");
    rep.sampled = true;
    MatchingSampler sampler(h, opt.seed, opt.limits);
    for (std::uint64_t t = 0; t < opt.sample_trials; ++t) absorb(sampler.sample());
  }

  rep.worst_s_slack = rep.rhs_s - rep.max_s_size;
  rep.worst_t_slack = rep.rhs_t - rep.max_t_size;
  rep.pass = rep.worst_s_slack >= 0 && rep.worst_t_slack >= 0;
  return rep;
}

DominanceReport verify_bound_dominance(const BipartiteHypergraph& h,
                                       const VerifyOptions& opt) {
  const CountReport cr = count_a_perfect_matchings(h, opt.limits);
  DominanceReport rep;
  rep.count = cr.count;
  rep.ln_count = cr.ln_count;

  const BoundParameters p = bound_parameters(h);
  const double bound_tol = std::min(opt.tol, 1e-10);
  if (cr.count == 0) {
    rep.vacuous = true;
    rep.pass = true;
    rep.gap_per_a = std::numeric_limits<double>::infinity();
    // rho may sit below k here; the bound is then undefined and stays NaN.
    try {
      rep.ln_bound = finite_matching_bound(p, bound_tol).ln_bound;
    } catch (const Error&) {
      rep.ln_bound = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
  }

  rep.ln_bound = finite_matching_bound(p, bound_tol).ln_bound;
  rep.pass = rep.ln_count <= rep.ln_bound + opt.tol;
  rep.gap_per_a = h.a_count > 0
                      ? (rep.ln_bound - rep.ln_count) / static_cast<double>(h.a_count)
                      : 0.0;
  return rep;
}

double entropy_of_uniform(const BigInt& count) {
  if (count < 1) throw Error("count must be positive");
  return log2_bigint(count);
}

ChiSquareReport sampler_uniformity_test(const BipartiteHypergraph& h,
                                        std::uint64_t trials, std::uint64_t seed,
                                        const SearchLimits& limits) {
  std::map<std::vector<int>, std::size_t> index;
  enumerate_matchings(
      h, [&](const Matching& x) { index.emplace(x.edge_indices, index.size()); },
      limits);

  ChiSquareReport rep;
  rep.matching_count = index.size();
  rep.trials = trials;
  if (index.size() < 2)
    throw Error("uniformity test needs at least two matchings, found " +
                std::to_string(index.size()));
  if (trials < 50 * index.size())
    throw Error("too few trials: " + std::to_string(trials) + " for " +
                std::to_string(index.size()) + " matchings (need 50 per cell)");

  std::vector<std::uint64_t> observed(index.size(), 0);
  MatchingSampler sampler(h, seed, limits);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Matching x = sampler.sample();
    const auto it = index.find(x.edge_indices);
    if (it == index.end()) throw Error("sampler produced an unknown matching");
    ++observed[it->second];
  }

  const double expected = static_cast<double>(trials) / static_cast<double>(index.size());
  for (std::uint64_t o : observed) {
    const double d = static_cast<double>(o) - expected;
    rep.statistic += d * d / expected;
  }
  rep.dof = index.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(rep.dof));
  rep.threshold = boost::math::quantile(dist, 0.999);
  rep.pass = rep.statistic < rep.threshold;
  return rep;
}

double chain_rule_entropy(const BipartiteHypergraph& h,
                          const std::vector<int>& reveal_order,
                          const SearchLimits& limits) {
  if (static_cast<int>(reveal_order.size()) != h.a_count)
    throw Error("reveal order must list every A-vertex exactly once");
  std::vector<char> seen(static_cast<std::size_t>(h.a_count), 0);
  for (int a : reveal_order) {
    if (a < 0 || a >= h.a_count || seen[static_cast<std::size_t>(a)])
      throw Error("reveal order must list every A-vertex exactly once");
    seen[static_cast<std::size_t>(a)] = 1;
  }

  std::vector<std::vector<int>> assignments;
  enumerate_matchings(
      h,
      [&](const Matching& x) {
        std::vector<int> owner(static_cast<std::size_t>(h.a_count), -1);
        for (int idx : x.edge_indices)
          owner[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(idx)].a)] = idx;
        assignments.push_back(std::move(owner));
      },
      limits);
  if (assignments.empty()) throw Error("infeasible: no A-perfect matching");

  const double total = static_cast<double>(assignments.size());
  double entropy = 0;
  std::vector<int> prefix;
  for (std::size_t i = 0; i < reveal_order.size(); ++i) {
    std::map<std::vector<int>, std::map<int, std::uint64_t>> groups;
    for (const auto& row : assignments) {
      prefix.clear();
      for (std::size_t j = 0; j < i; ++j)
        prefix.push_back(row[static_cast<std::size_t>(reveal_order[j])]);
      groups[prefix][row[static_cast<std::size_t>(reveal_order[i])]]++;
    }
    for (const auto& [_, values] : groups) {
      std::uint64_t in_group = 0;
      for (const auto& [_, n] : values) in_group += n;
      for (const auto& [_, n] : values) {
        const double p_joint = static_cast<double>(n) / total;
        entropy -= p_joint * std::log2(static_cast<double>(n) /
                                       static_cast<double>(in_group));
      }
    }
  }
  return entropy;
}

}  // namespace matchbound
