#pragma once

#include "matchbound/bounds.hpp"
#include "matchbound/enumeration.hpp"

namespace matchbound {

struct VerifyOptions {
  double tol = 1e-9;
  // Above this many matchings, expectations over X switch to sampling.
  BigInt exact_enumeration_cap = 100000;
  std::uint64_t sample_trials = 2000;
  std::uint64_t seed = 0;
  SearchLimits limits;
};

// Entropy inequality: log2 N <= E_X[|A| int_0^1 log2((1/|A|) sum_a sum_{e
// contains a} x^{m(a,e,X)}) dx] under the uniform matching distribution.
struct Lemma31Report {
  double lhs_bits = 0;
  double rhs_bits = 0;
  // Tighter pre-averaging value E_X[sum_a int log2(sum_e x^m) dx], reported
  // so the convexity gap is visible. Always <= rhs_bits up to quadrature.
  double rhs_pre_jensen_bits = 0;
  BigInt matching_count;
  bool pass = false;
  bool sampled = false;
  double rhs_stderr = 0;  // sampled mode only
};

// Throws Error when h has no A-perfect matching.
Lemma31Report verify_lemma31(const BipartiteHypergraph& h, const VerifyOptions& opt = {});

// Size bounds |S(X)| <= |A| C(k,2) (delta2 - 1) and |T(X)| <= (|B| - k|A|) D
// over every A-perfect matching X.
struct Lemma33Report {
  std::int64_t max_s_size = 0;
  std::int64_t max_t_size = 0;
  std::int64_t rhs_s = 0;
  std::int64_t rhs_t = 0;
  std::int64_t worst_s_slack = 0;  // rhs_s - max_s_size
  std::int64_t worst_t_slack = 0;
  std::uint64_t checked_matchings = 0;
  bool sampled = false;
  bool pass = false;
};

Lemma33Report verify_lemma33(const BipartiteHypergraph& h, const VerifyOptions& opt = {});

// ln(exact count) against the finite matching bound. Zero matchings make the
// comparison vacuous (pass, ln_count = -infinity).
struct DominanceReport {
  BigInt count;
  double ln_count = 0;
  double ln_bound = 0;
  double gap_per_a = 0;
  bool vacuous = false;
  bool pass = false;
};

DominanceReport verify_bound_dominance(const BipartiteHypergraph& h,
                                       const VerifyOptions& opt = {});

// log2(count): entropy in bits of the uniform distribution on count outcomes.
double entropy_of_uniform(const BigInt& count);

// Chi-square goodness of fit for the exact sampler against the uniform
// distribution on all A-perfect matchings. Requires at least two matchings
// and trials >= 50 * matching_count.
struct ChiSquareReport {
  double statistic = 0;
  double threshold = 0;  // 99.9% quantile at matching_count - 1 dof
  std::uint64_t dof = 0;
  std::uint64_t matching_count = 0;
  std::uint64_t trials = 0;
  bool pass = false;
};

ChiSquareReport sampler_uniformity_test(const BipartiteHypergraph& h,
                                        std::uint64_t trials, std::uint64_t seed,
                                        const SearchLimits& limits = {});

// Exact sum of conditional entropies (bits) of the edges X_a revealed in the
// given order under the uniform matching distribution. Equals log2 N for
// every reveal order.
double chain_rule_entropy(const BipartiteHypergraph& h,
                          const std::vector<int>& reveal_order,
                          const SearchLimits& limits = {});

}  // namespace matchbound
