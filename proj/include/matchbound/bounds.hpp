#pragma once

#include <cstdint>
#include <functional>

#include "matchbound/hypergraph.hpp"

namespace matchbound {

struct Quadrature {
  double value = 0;
  double error_estimate = 0;
};

// Adaptive Simpson with Richardson correction; a panel is accepted when its
// local error estimate fits within its share of tol.
Quadrature adaptive_simpson(const std::function<double(double)>& f, double lo,
                            double hi, double tol);

// int_0^1 ln(a + q x^k) dx for a, q >= 0, not both zero. The endpoint cases
// a = 0 (value ln q - k) and q = 0 (value ln a) are analytic.
Quadrature integral_log_poly_quad(double a, double q, int k, double tol);
double integral_log_poly(double a, double q, int k, double tol = 1e-10);

// Antiderivative evaluation for k = 2, a > 0, q > 0:
// ln(a + q) - 2 + 2 sqrt(a/q) atan(sqrt(q/a)).
double integral_log_poly_closed_k2(double a, double q);

// Every scalar entering the finite matching bound.
struct BoundParameters {
  std::int64_t a_count = 0;
  int k = 0;
  double q = 0;    // average A-degree
  double d = 0;    // maximum B-degree
  int delta2 = 0;  // maximum codegree
  double rho = 0;  // |B| / |A|

  double s_bar() const;  // C(k,2) * (delta2 - 1), clamped at 0
  double t_bar() const;  // (rho - k) * d
};

BoundParameters bound_parameters(const BipartiteHypergraph& h);

struct BoundReport {
  enum class Method { closed_form_k2, adaptive_quadrature };
  double ln_bound = 0;
  double integrand_constant = 0;  // 1 + s_bar + t_bar
  double quadrature_error_estimate = 0;
  Method method = Method::adaptive_quadrature;
};

const char* to_string(BoundReport::Method m);

// ln of the pre-asymptotic bound on the number of A-perfect matchings:
// |A| * int_0^1 ln(1 + s_bar + t_bar + q x^k) dx. Uses the closed form when
// k = 2. Throws Error when rho < k.
BoundReport finite_matching_bound(const BoundParameters& p, double tol = 1e-10);

struct Lemma41Deviation {
  double value;       // int_0^1 ln(eps + x^k) dx
  double scaled_dev;  // |value + k| / eps^(1/k)
};

// As eps drops, scaled_dev rises toward pi / sin(pi/k) and stays below 5 for
// k in {2, 3, 4}.
Lemma41Deviation lemma41_deviation(double eps, int k, double tol = 1e-12);

struct Lemma42Check {
  double lhs;  // ln(8n/9 + 1/3) - 2
  double rhs;  // ln n - 2.117
  bool pass;
};

Lemma42Check lemma42_check(std::int64_t n);

inline constexpr double kTransversalEnvelopeConstant = 2.117;

// n (ln n - 2.117): ln of the transversal-count envelope (n / e^2.117)^n.
double transversal_bound_ln(std::int64_t n);

// n (ln n - 2): the e^2 reference envelope, for side-by-side reporting.
double reference_envelope_ln(std::int64_t n);

enum class BoundMode { finite, asymptotic };

// ln of the bound on proper q-edge-colorings of a d-regular k-uniform
// hypergraph on n vertices with codegree bound delta2, via its incidence
// encoding: |A| = d n / k edges, rho = q k / d. Asymptotic mode returns
// (d n / k)(ln q - k).
double coloring_bound_ln(std::int64_t n, int d, int k, int delta2, int q,
                         BoundMode mode, double tol = 1e-10);

}  // namespace matchbound
