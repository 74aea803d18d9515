#include "matchbound/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "matchbound/errors.hpp"

namespace matchbound {

namespace {

double pow_int(double x, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

struct SimpsonState {
  const std::function<double(double)>& f;
  double tol;
  double span;
  double err_acc = 0;
};

// Standard adaptive Simpson: accept a panel when the Richardson error
// estimate fits the panel's share of tol, then apply the correction. A
// minimum depth forces initial refinement so a deceptively smooth coarse
// panel cannot be accepted sight unseen.
double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm,
                   double fb, double whole, int depth, int min_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double err = (left + right - whole) / 15;
  if (depth <= 0 ||
      (min_depth <= 0 && std::abs(err) <= st.tol * (b - a) / st.span)) {
    st.err_acc += std::abs(err);
    return left + right + err;
  }
  return simpson_rec(st, a, m, fa, flm, fm, left, depth - 1, min_depth - 1) +
         simpson_rec(st, m, b, fm, frm, fb, right, depth - 1, min_depth - 1);
}

}  // namespace

Quadrature adaptive_simpson(const std::function<double(double)>& f, double lo,
                            double hi, double tol) {
  if (!(tol > 0)) throw Error("tolerance must be positive");
  if (hi < lo) throw Error("integration bounds out of order");
  if (hi == lo) return {0, 0};
  SimpsonState st{f, tol, hi - lo};
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6 * (fa + 4 * fm + fb);
  const double value = simpson_rec(st, lo, hi, fa, fm, fb, whole, 60, 6);
  return {value, st.err_acc};
}

Quadrature integral_log_poly_quad(double a, double q, int k, double tol) {
  if (k < 1) throw Error("k must be at least 1");
  if (a < 0 || q < 0) throw Error("coefficients must be nonnegative");
  if (a == 0 && q == 0) throw Error("integrand is identically -infinity");
  if (q == 0) return {std::log(a), 0};
  if (a == 0) return {std::log(q) - k, 0};  // exact: ln q + k int_0^1 ln x dx
  return adaptive_simpson([a, q, k](double x) { return std::log(a + q * pow_int(x, k)); },
                          0, 1, tol);
}

double integral_log_poly(double a, double q, int k, double tol) {
  return integral_log_poly_quad(a, q, k, tol).value;
}

double integral_log_poly_closed_k2(double a, double q) {
  if (!(a > 0) || !(q > 0)) throw Error("closed form needs a > 0 and q > 0");
  return std::log(a + q) - 2 + 2 * std::sqrt(a / q) * std::atan(std::sqrt(q / a));
}

double BoundParameters::s_bar() const {
  return 0.5 * k * (k - 1) * std::max(0, delta2 - 1);
}

double BoundParameters::t_bar() const { return (rho - k) * d; }

BoundParameters bound_parameters(const BipartiteHypergraph& h) {
  const DegreeStats stats = degree_stats(h);
  BoundParameters p;
  p.a_count = h.a_count;
  p.k = h.k;
  p.q = boost::rational_cast<double>(stats.q_avg);
  p.d = stats.d_max_b;
  p.delta2 = stats.delta2;
  p.rho = boost::rational_cast<double>(stats.rho);
  return p;
}

const char* to_string(BoundReport::Method m) {
  return m == BoundReport::Method::closed_form_k2 ? "closed_form_k2"
                                                  : "adaptive_quadrature";
}

BoundReport finite_matching_bound(const BoundParameters& p, double tol) {
  if (p.k < 1) throw Error("k must be at least 1");
  if (p.a_count < 0) throw Error("negative a_count");
  if (p.q < 0) throw Error("negative average degree");
  if (p.d < 0) throw Error("negative maximum degree");

  BoundReport rep;
  if (p.a_count == 0) {
    // An empty A side makes the bound exp(0) whatever the integrand is.
    rep.integrand_constant = 1;
    return rep;
  }
  if (p.rho < p.k - 1e-9)
    throw Error("B side too small: rho < k leaves A unsaturable");
  const double t_bar = std::max(0.0, p.t_bar());
  const double constant = 1 + p.s_bar() + t_bar;
  rep.integrand_constant = constant;

  const double n = static_cast<double>(p.a_count);
  if (p.q == 0) {
    rep.ln_bound = n * std::log(constant);
  } else if (p.k == 2) {
    rep.method = BoundReport::Method::closed_form_k2;
    rep.ln_bound = n * integral_log_poly_closed_k2(constant, p.q);
  } else {
    const Quadrature quad = integral_log_poly_quad(constant, p.q, p.k, tol);
    rep.ln_bound = n * quad.value;
    rep.quadrature_error_estimate = quad.error_estimate;
  }
  return rep;
}

Lemma41Deviation lemma41_deviation(double eps, int k, double tol) {
  if (!(eps > 0)) throw Error("epsilon must be positive");
  if (k < 1) throw Error("k must be at least 1");
  const double value = integral_log_poly(eps, 1.0, k, tol);
  const double scaled = std::abs(value + k) / std::pow(eps, 1.0 / k);
  return {value, scaled};
}

Lemma42Check lemma42_check(std::int64_t n) {
  if (n < 1) throw Error("n must be positive");
  const double nd = static_cast<double>(n);
  Lemma42Check check;
  check.lhs = std::log(8 * nd / 9 + 1.0 / 3) - 2;
  check.rhs = std::log(nd) - kTransversalEnvelopeConstant;
  check.pass = check.lhs <= check.rhs;
  return check;
}

double transversal_bound_ln(std::int64_t n) {
  if (n < 1) throw Error("order must be positive");
  const double nd = static_cast<double>(n);
  return nd * (std::log(nd) - kTransversalEnvelopeConstant);
}

double reference_envelope_ln(std::int64_t n) {
  if (n < 1) throw Error("order must be positive");
  const double nd = static_cast<double>(n);
  return nd * (std::log(nd) - 2);
}

double coloring_bound_ln(std::int64_t n, int d, int k, int delta2, int q,
                         BoundMode mode, double tol) {
  if (n < 0) throw Error("negative vertex count");
  if (d < 1) throw Error("degree must be at least 1");
  if (k < 1) throw Error("k must be at least 1");
  if (delta2 < 0) throw Error("negative codegree");
  if (q < 0) throw Error("negative color count");
  if ((n * static_cast<std::int64_t>(d)) % k != 0)
    throw Error("d * n must be divisible by k");
  const std::int64_t edges = n * d / k;

  if (mode == BoundMode::asymptotic)
    return static_cast<double>(edges) * (std::log(static_cast<double>(q)) - k);

  BoundParameters p;
  p.a_count = edges;
  p.k = k;
  p.q = q;
  p.d = d;
  p.delta2 = delta2;
  p.rho = static_cast<double>(q) * k / d;
  return finite_matching_bound(p, tol).ln_bound;
}

}  // namespace matchbound
