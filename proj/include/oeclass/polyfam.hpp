#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "oeclass/int_types.hpp"
#include "oeclass/polynomial.hpp"

namespace oeclass {

inline Int lcm_1_to_n(int n) {
  if (n < 1) throw std::invalid_argument("lcm_1_to_n: n must be >= 1");
  Int l = 1;
  for (int k = 2; k <= n; ++k) l = lcm_int(l, Int(k));
  return l;
}

namespace pf {

inline std::vector<PolyVar> x_vars() { return {{"x", 1}}; }
inline std::vector<PolyVar> mx_vars() { return {{"m", 1}, {"x", 1}}; }
inline std::vector<PolyVar> b_vars() { return {{"b", 1}}; }
inline std::vector<PolyVar> mb_vars() { return {{"m", 1}, {"b", 1}}; }
inline std::vector<PolyVar> y_vars() { return {{"y", 1}}; }
inline std::vector<PolyVar> xy_vars() { return {{"x", 1}, {"y", 1}}; }

inline std::vector<PolyVar> plain_xk_vars(int n) {
  std::vector<PolyVar> v;
  for (int k = 1; k <= n; ++k) v.push_back({"x" + std::to_string(k), 1});
  return v;
}

inline std::vector<PolyVar> m_xk_vars(int n) {
  std::vector<PolyVar> v{{"m", 1}};
  for (int k = 1; k <= n; ++k) v.push_back({"x" + std::to_string(k), 1});
  return v;
}

inline std::vector<PolyVar> sk_vars(int n) {
  std::vector<PolyVar> v;
  for (int k = 1; k <= n; ++k) v.push_back({"s" + std::to_string(k), 1});
  return v;
}

}  // namespace pf

// p_n(x) = sum_{k=1}^{n} (-1)^{k-1} (l(n)/k) m^{n-k} x^k with l(n) = lcm(1..n).
// Coefficients are integers because k <= n divides l(n).
inline IntPolynomial p_poly_sym(int n) {
  if (n < 1) throw std::invalid_argument("p_poly_sym: n must be >= 1");
  Int l = lcm_1_to_n(n);
  IntPolynomial p(pf::mx_vars());
  for (int k = 1; k <= n; ++k) {
    Int c = exact_div(l, Int(k));
    if (k % 2 == 0) c = -c;
    p.add_term({n - k, k}, c);
  }
  return p;
}

inline IntPolynomial p_poly(int n, const Int& m) {
  return p_poly_sym(n).substitute("m", m);
}

// T_n(b) = sum_{k=1}^{n} (-1)^{k-1} m^{n-k} b^{k-1}; (m+b) T_n(b) = m^n - (-b)^n.
inline IntPolynomial T_poly_sym(int n) {
  if (n < 1) throw std::invalid_argument("T_poly_sym: n must be >= 1");
  IntPolynomial t(pf::mb_vars());
  for (int k = 1; k <= n; ++k) t.add_term({n - k, k - 1}, (k % 2 == 1) ? Int(1) : Int(-1));
  return t;
}

inline IntPolynomial T_poly(int n, const Int& m) {
  return T_poly_sym(n).substitute("m", m);
}

// l(n) * (x - x^2/2 + ... + (-1)^{n-1} x^n / n), integral by the choice of l(n).
inline IntPolynomial v_poly(int n) {
  if (n < 1) throw std::invalid_argument("v_poly: n must be >= 1");
  Int l = lcm_1_to_n(n);
  IntPolynomial v(pf::y_vars());
  for (int k = 1; k <= n; ++k) {
    Int c = exact_div(l, Int(k));
    if (k % 2 == 0) c = -c;
    v.add_term({k}, c);
  }
  return v;
}

// W_n = (n!/l(n)) p_n; coefficients n!/k stay integral.
inline IntPolynomial W_poly(int n, const Int& m) {
  if (n < 1) throw std::invalid_argument("W_poly: n must be >= 1");
  Int f = factorial(static_cast<unsigned>(n));
  IntPolynomial w(pf::x_vars());
  for (int k = 1; k <= n; ++k) {
    Int c = exact_div(f, Int(k)) * pow_int(m, static_cast<unsigned>(n - k));
    if (k % 2 == 0) c = -c;
    w.add_term({k}, c);
  }
  return w;
}

// Newton polynomial: power sum in terms of elementary symmetric functions,
// Q_k = s1 Q_{k-1} - s2 Q_{k-2} + ... + (-1)^k s_{k-1} Q_1 + (-1)^{k-1} k s_k.
inline IntPolynomial newton_poly(int k) {
  if (k < 1) throw std::invalid_argument("newton_poly: k must be >= 1");
  std::vector<PolyVar> vars = pf::sk_vars(k);
  std::vector<IntPolynomial> q;
  q.push_back(IntPolynomial::zero(vars));  // unused slot 0
  for (int j = 1; j <= k; ++j) {
    IntPolynomial qj(vars);
    for (int i = 1; i < j; ++i) {
      std::vector<int> e(vars.size(), 0);
      e[i - 1] = 1;
      IntPolynomial si = IntPolynomial::monomial(vars, e, (i % 2 == 1) ? Int(1) : Int(-1));
      qj = qj + si * q[j - i];
    }
    std::vector<int> e(vars.size(), 0);
    e[j - 1] = 1;
    qj = qj + IntPolynomial::monomial(vars, e, (j % 2 == 1) ? Int(j) : Int(-j));
    q.push_back(qj);
  }
  return q[k];
}

// Closed form of q_n: the sum over k_1 + 2 k_2 + ... + n k_n = n of
//   (-1)^{K-1} m^{n-K} n! (K-1)! / (prod (i!)^{k_i} k_i!) x_1^{k_1} ... x_n^{k_n}
// with K = k_1 + ... + k_n. Exact integer division throughout.
inline IntPolynomial q_poly_sym(int n) {
  if (n < 1) throw std::invalid_argument("q_poly_sym: n must be >= 1");
  std::vector<PolyVar> vars = pf::m_xk_vars(n);
  IntPolynomial q(vars);
  std::vector<int> part(n + 1, 0);
  // enumerate k_1..k_n with sum i*k_i = n
  std::function<void(int, int)> rec = [&](int i, int remaining) {
    if (i > n) {
      if (remaining != 0) return;
      long K = 0;
      for (int t = 1; t <= n; ++t) K += part[t];
      Int num = factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(K - 1));
      Int den = 1;
      for (int t = 1; t <= n; ++t) {
        den *= pow_int(factorial(static_cast<unsigned>(t)), static_cast<unsigned>(part[t]));
        den *= factorial(static_cast<unsigned>(part[t]));
      }
      Int c = exact_div(num, den);
      if (K % 2 == 0) c = -c;
      std::vector<int> e(vars.size(), 0);
      e[0] = n - static_cast<int>(K);
      for (int t = 1; t <= n; ++t) e[t] = part[t];
      q.add_term(e, c);
      return;
    }
    for (int k = 0; i * k <= remaining; ++k) {
      part[i] = k;
      rec(i + 1, remaining - i * k);
    }
    part[i] = 0;
  };
  rec(1, n);
  return q;
}

inline IntPolynomial q_closed_form(int n, const Int& m) {
  return q_poly_sym(n).substitute("m", m);
}

// Construction route: q_n is the weight-n part of W_n(x_1/1! + ... + x_n/n!),
// where x_k carries weight k. Verified integral, then checked against the
// closed form; a mismatch is an internal bug, not an input condition.
inline IntPolynomial q_poly(int n, const Int& m) {
  if (n < 1) throw std::invalid_argument("q_poly: n must be >= 1");
  std::vector<PolyVar> vars;
  for (int k = 1; k <= n; ++k) vars.push_back({"x" + std::to_string(k), k});
  RationalPolynomial y(vars);
  for (int k = 1; k <= n; ++k) {
    std::vector<int> e(vars.size(), 0);
    e[k - 1] = 1;
    y.add_term(e, Rat(1) / Rat(factorial(static_cast<unsigned>(k))));
  }
  Int f = factorial(static_cast<unsigned>(n));
  RationalPolynomial w = RationalPolynomial::zero(vars);
  RationalPolynomial yr = RationalPolynomial::constant(vars, Rat(1));
  for (int r = 1; r <= n; ++r) {
    yr = yr * y;
    Rat c = Rat(exact_div(f, Int(r))) * Rat(pow_int(m, static_cast<unsigned>(n - r)));
    if (r % 2 == 0) c = -c;
    w = w + yr.scaled(c);
  }
  IntPolynomial q = to_integer(w.weighted_truncate(n));
  // Reprint over weight-1 variables so the result matches the closed form.
  IntPolynomial flat(pf::plain_xk_vars(n));
  for (const auto& [e, c] : q.terms()) flat.add_term(e, c);
  IntPolynomial expect = q_closed_form(n, m);
  if (!(flat == expect)) throw std::logic_error("q_poly: construction disagrees with closed form");
  return flat;
}

// r_n = q_n at m = 1.
inline IntPolynomial r_poly(int n) { return q_closed_form(n, Int(1)); }

// a(j,k) = (jk)! / ((j!)^k k!), by the recurrence
// a(j,k) = binom(jk-1, j-1) a(j, k-1), a(j,1) = 1.
inline Int a_coeff(int j, int k) {
  if (j < 1 || k < 1) throw std::invalid_argument("a_coeff: arguments must be >= 1");
  Int a = 1;
  for (int t = 2; t <= k; ++t) a *= binomial(Int(j) * t - 1, static_cast<unsigned>(j - 1));
  return a;
}

// q_n(1,1,...,1), used by the line bundle test.
inline Int q_all_ones(int n, const Int& m) {
  std::map<std::string, Int> vals;
  for (int k = 1; k <= n; ++k) vals["x" + std::to_string(k)] = 1;
  return q_closed_form(n, m).evaluate(vals);
}

struct AbcDecomposition {
  IntPolynomial u;       // in x, y: p(x+y) = p(x) + p(y) + xy * u
  IntPolynomial v;       // in y:    l(n) (y - y^2/2 + ...)
  IntPolynomial s_next;  // in x, y: p(x+my+xy) = p(x) + m^n v(y) + s_next,
                         //          every monomial of total degree >= n+1
};

inline AbcDecomposition lemma_abc_decompose(int n, const Int& m) {
  if (n < 1) throw std::invalid_argument("lemma_abc_decompose: n must be >= 1");
  std::vector<PolyVar> xy = pf::xy_vars();
  IntPolynomial p = p_poly(n, m);
  IntPolynomial x = IntPolynomial::variable(xy, 0);
  IntPolynomial yv = IntPolynomial::variable(xy, 1);

  IntPolynomial p_x = p.compose(xy, {{"x", x}});
  IntPolynomial p_y = p.compose(xy, {{"x", yv}});
  IntPolynomial p_xy = p.compose(xy, {{"x", x + yv}});
  IntPolynomial u = (p_xy - p_x - p_y).exact_divide_monomial({1, 1});
  if (!(p_x + p_y + x * yv * u == p_xy))
    throw std::logic_error("lemma_abc_decompose: additivity defect mismatch");

  IntPolynomial v = v_poly(n);
  IntPolynomial arg = x + yv.scaled(m) + x * yv;
  IntPolynomial v_in_xy = v.compose(xy, {{"y", yv}});
  IntPolynomial s_next =
      p.compose(xy, {{"x", arg}}) - p_x - v_in_xy.scaled(pow_int(m, static_cast<unsigned>(n)));
  if (!s_next.is_zero() && s_next.min_total_degree() < n + 1)
    throw std::logic_error("lemma_abc_decompose: low-degree term in remainder");
  return {u, v, s_next};
}

// p_{n+1}(x) = (l(n+1)/l(n)) m p_n(x) + (-1)^n (l(n+1)/(n+1)) x^{n+1}.
inline bool recurrence_check(int n, const Int& m) {
  if (n < 1) throw std::invalid_argument("recurrence_check: n must be >= 1");
  Int l_n = lcm_1_to_n(n);
  Int l_n1 = lcm_1_to_n(n + 1);
  IntPolynomial lhs = p_poly(n + 1, m);
  IntPolynomial rhs = p_poly(n, m).scaled(exact_div(l_n1, l_n) * m);
  Int c = exact_div(l_n1, Int(n + 1));
  if (n % 2 == 1) c = -c;
  rhs.add_term({n + 1}, c);
  return lhs == rhs;
}

}  // namespace oeclass
