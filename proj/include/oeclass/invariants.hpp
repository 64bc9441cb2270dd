#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oeclass/cohomology.hpp"
#include "oeclass/int_linalg.hpp"
#include "oeclass/int_types.hpp"
#include "oeclass/polyfam.hpp"
#include "oeclass/polynomial.hpp"
#include "oeclass/ringcore.hpp"

namespace oeclass {

// Class of a rank-(m+1) bundle: the rank and the reduced class [E] - rank(E).
struct BundleClass {
  Int rank;
  RingElement reduced;

  bool operator==(const BundleClass& o) const {
    return rank == o.rank && reduced == o.reduced;
  }
};

inline BundleClass make_bundle(const Int& rank, RingElement reduced) {
  if (rank < 1) throw std::invalid_argument("make_bundle: rank must be >= 1");
  return {rank, std::move(reduced)};
}

inline void check_rank(const BundleClass& e, const Int& m, const char* where) {
  if (e.rank != m + 1)
    throw std::invalid_argument(std::string(where) + ": rank must equal m + 1");
}

// Canonical representative of a class in the quotient by the filtration step
// at level modulus_level (plus the ring relations).
struct FiltrationCoset {
  const RingPresentation* ring = nullptr;
  int modulus_level = 0;
  std::vector<Int> coeff;

  bool operator==(const FiltrationCoset& o) const {
    return modulus_level == o.modulus_level && coeff == o.coeff;
  }
};

inline std::string pretty(const FiltrationCoset& c) {
  return pretty(RingElement{c.ring, c.coeff});
}

inline FiltrationCoset reduce_mod_filtration(const RingPresentation& r, const RingElement& e,
                                             int level) {
  IntMatrix rows = filtration_submodule(r, level).as_matrix(r.num_generators());
  for (std::size_t i = 0; i < r.relation_rows().rows(); ++i)
    rows.append_row(r.relation_rows().row(i));
  return {&r, level, hermite_reduce(e.coeff, hermite_row_basis(rows))};
}

// mu_n: the class of p_n applied to the reduced bundle class, taken in the
// quotient by the filtration step at level n+1.
inline FiltrationCoset mu_n(const RingPresentation& r, const Int& m, const BundleClass& e,
                            int n) {
  if (n < 1) throw std::invalid_argument("mu_n: n must be >= 1");
  check_rank(e, m, "mu_n");
  RingElement val = eval_poly(r, p_poly(n, m), {{"x", e.reduced}});
  return reduce_mod_filtration(r, val, n + 1);
}

struct MuDivisibility {
  bool divisible = false;
  RingElement difference;  // p_n difference before quotienting
  std::optional<RingElement> witness;
};

// Necessary condition: when the algebras are isomorphic, the mu_n difference
// is divisible by m^n in the filtration quotient.
inline MuDivisibility mu_divisibility_test(const RingPresentation& r, const Int& m,
                                           const BundleClass& e, const BundleClass& f, int n) {
  if (n < 1) throw std::invalid_argument("mu_divisibility_test: n must be >= 1");
  check_rank(e, m, "mu_divisibility_test");
  check_rank(f, m, "mu_divisibility_test");
  IntPolynomial p = p_poly(n, m);
  RingElement pe = eval_poly(r, p, {{"x", e.reduced}});
  RingElement pf = eval_poly(r, p, {{"x", f.reduced}});
  MuDivisibility out{false, ring_sub(pe, pf), std::nullopt};
  auto w = is_divisible(out.difference, pow_int(m, static_cast<unsigned>(n)),
                        filtration_submodule(r, n + 1));
  if (w) {
    out.divisible = true;
    out.witness = *w;
  }
  return out;
}

// Tower relations between the mu invariants: with K^(n+1) = 0,
// mu_{n+k} = (l(n+k)/l(n)) m^k mu_n exactly, and each mu_j maps to
// (l(j)/l(j-1)) m mu_{j-1} one filtration step down.
inline bool mu_tower_check(const RingPresentation& r, const Int& m, const BundleClass& e,
                           int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("mu_tower_check: need n >= 1, k >= 0");
  check_rank(e, m, "mu_tower_check");
  if (!submodule_is_zero(r, ideal_power(r, n + 1)))
    throw HypothesisError("mu_tower_check: R^(n+1) does not vanish");
  const RingElement& a = e.reduced;

  RingElement pn = eval_poly(r, p_poly(n, m), {{"x", a}});
  RingElement pnk = eval_poly(r, p_poly(n + k, m), {{"x", a}});
  Int scale = exact_div(lcm_1_to_n(n + k), lcm_1_to_n(n)) * pow_int(m, static_cast<unsigned>(k));
  if (!(pnk == ring_scalar_mul(scale, pn))) return false;

  for (int j = 2; j <= n; ++j) {
    RingElement pj = eval_poly(r, p_poly(j, m), {{"x", a}});
    RingElement pj1 = eval_poly(r, p_poly(j - 1, m), {{"x", a}});
    Int step = exact_div(lcm_1_to_n(j), lcm_1_to_n(j - 1)) * m;
    RingElement diff = ring_sub(pj, ring_scalar_mul(step, pj1));
    if (!in_submodule(diff, filtration_submodule(r, j))) return false;
  }
  return true;
}

// Bundle data on the cohomology side: rank and Chern classes c_k in degree 2k.
struct ChernData {
  Int rank;
  std::vector<CohomologyClass> c;  // c[k-1] has degree 2k
};

// s_k = Q_k(c_1, ..., c_k) under cup product; classes above the dimension
// bound are zero.
inline std::vector<CohomologyClass> chern_to_s(const CohomologyRing& h, const ChernData& data,
                                               int up_to) {
  if (up_to < 1) throw std::invalid_argument("chern_to_s: up_to must be >= 1");
  std::vector<CohomologyClass> out;
  for (int k = 1; k <= up_to; ++k) {
    if (2 * k > h.dim_bound) {
      out.push_back(cohomology_zero(h, k));
      continue;
    }
    std::map<std::string, RingElement> values;
    for (int i = 1; i <= k; ++i) {
      RingElement ci = (i <= static_cast<int>(data.c.size()))
                           ? data.c[static_cast<std::size_t>(i - 1)].element
                           : ring_zero(h.ring);
      values["s" + std::to_string(i)] = ci;
    }
    out.push_back({2 * k, eval_poly(h.ring, newton_poly(k), values)});
  }
  return out;
}

struct QInvariant {
  CohomologyClass integral;     // q_n(s_1, ..., s_n) in degree 2n
  std::vector<Int> mod_coords;  // canonical coordinates modulo m^n in that degree
  Int modulus;                  // m^n
};

namespace detail {

inline std::vector<Int> reduce_degree_mod(const CohomologyRing& h, int n,
                                          const std::vector<Int>& coords, const Int& modulus) {
  AbelianGroupPresentation grp = degree_group(h, n);
  IntMatrix rows(0, grp.num_generators);
  for (std::size_t i = 0; i < grp.relations.rows(); ++i) rows.append_row(grp.relations.row(i));
  for (std::size_t i = 0; i < grp.num_generators; ++i) {
    std::vector<Int> v(grp.num_generators, Int(0));
    v[i] = modulus;
    rows.append_row(v);
  }
  return hermite_reduce(coords, hermite_row_basis(rows));
}

}  // namespace detail

// q_n evaluated on the s-classes, with its reduction modulo m^n: the quotient
// group is modeled by adjoining m^n times every degree-2n generator.
inline QInvariant q_invariant(const CohomologyRing& h, const Int& m,
                              const std::vector<CohomologyClass>& s, int n) {
  if (n < 1) throw std::invalid_argument("q_invariant: n must be >= 1");
  if (static_cast<int>(s.size()) < n)
    throw std::invalid_argument("q_invariant: s_k required for all k <= n");
  std::map<std::string, RingElement> values;
  for (int kk = 1; kk <= n; ++kk)
    values["x" + std::to_string(kk)] = s[static_cast<std::size_t>(kk - 1)].element;
  CohomologyClass integral{2 * n, eval_poly(h.ring, q_closed_form(n, m), values)};
  Int modulus = pow_int(m, static_cast<unsigned>(n));
  std::vector<Int> coords = degree_coordinates(h, integral);
  return {integral, detail::reduce_degree_mod(h, n, coords, modulus), modulus};
}

struct QDivisibility {
  bool divisible = false;
  CohomologyClass difference;  // q_n(sE) - q_n(sF) in degree 2n
  std::optional<std::vector<Int>> witness_coords;
};

// Divisibility of the q_n difference by m^n inside H^{2n}.
inline QDivisibility q_divisibility_test(const CohomologyRing& h, const Int& m,
                                         const std::vector<CohomologyClass>& s_e,
                                         const std::vector<CohomologyClass>& s_f, int n) {
  QInvariant qe = q_invariant(h, m, s_e, n);
  QInvariant qf = q_invariant(h, m, s_f, n);
  QDivisibility out{false, cohomology_sub(qe.integral, qf.integral), std::nullopt};
  std::vector<Int> coords = degree_coordinates(h, out.difference);
  AbelianGroupPresentation grp = degree_group(h, n);
  IntMatrix lhs(grp.num_generators, grp.num_generators);
  Int modulus = pow_int(m, static_cast<unsigned>(n));
  for (std::size_t i = 0; i < grp.num_generators; ++i) lhs.at(i, i) = modulus;
  auto sol = solve_in_quotient(lhs, coords, grp.relations);
  if (sol) {
    out.divisible = true;
    out.witness_coords = sol->x;
  }
  return out;
}

struct LineBundleQRow {
  int n = 0;
  Int q_ones;                  // q_n(1, ..., 1)
  CohomologyClass tested;      // q_n(1,...,1) (c1^n - c1'^n)
  bool divisible = false;
};

// Line-bundle specialization: s_k(L) = c1(L)^k collapses q_n to
// q_n(1,...,1) c1^n, so the invariant reduces to powers of c1.
inline std::vector<LineBundleQRow> line_bundle_q_test(const CohomologyRing& h, const Int& m,
                                                      const CohomologyClass& c1e,
                                                      const CohomologyClass& c1f, int max_n) {
  if (c1e.degree != 2 || c1f.degree != 2)
    throw std::invalid_argument("line_bundle_q_test: c1 classes must have degree 2");
  std::vector<LineBundleQRow> out;
  CohomologyClass pe = c1e, pf = c1f;
  for (int n = 1; n <= max_n; ++n) {
    if (n > 1) {
      pe = cup(h, pe, c1e);
      pf = cup(h, pf, c1f);
    }
    LineBundleQRow row;
    row.n = n;
    row.q_ones = q_all_ones(n, m);
    row.tested = cohomology_scalar_mul(row.q_ones, cohomology_sub(pe, pf));
    std::vector<Int> coords = degree_coordinates(h, row.tested);
    AbelianGroupPresentation grp = degree_group(h, n);
    IntMatrix lhs(grp.num_generators, grp.num_generators);
    Int modulus = pow_int(m, static_cast<unsigned>(n));
    for (std::size_t i = 0; i < grp.num_generators; ++i) lhs.at(i, i) = modulus;
    row.divisible = solve_in_quotient(lhs, coords, grp.relations).has_value();
    out.push_back(row);
  }
  return out;
}

// Formal s-class vector of a virtual class: s_0 is the rank, the higher
// components are polynomials in the formal variables. Sums are additive and
// products follow the convolution rule with binomial weights.
struct FormalSClass {
  Int rank;
  std::vector<IntPolynomial> s;  // s[k-1] = s_k
};

inline FormalSClass formal_add(const FormalSClass& a, const FormalSClass& b) {
  if (a.s.size() != b.s.size()) throw std::invalid_argument("formal_add: size mismatch");
  FormalSClass out{a.rank + b.rank, a.s};
  for (std::size_t i = 0; i < out.s.size(); ++i) out.s[i] = out.s[i] + b.s[i];
  return out;
}

inline FormalSClass formal_scale(const Int& c, const FormalSClass& a) {
  FormalSClass out{c * a.rank, a.s};
  for (auto& p : out.s) p = p.scaled(c);
  return out;
}

inline FormalSClass formal_mul(const FormalSClass& a, const FormalSClass& b) {
  if (a.s.size() != b.s.size()) throw std::invalid_argument("formal_mul: size mismatch");
  const std::size_t nn = a.s.size();
  FormalSClass out{a.rank * b.rank, a.s};
  for (std::size_t k = 1; k <= nn; ++k) {
    IntPolynomial acc = a.s[k - 1].scaled(b.rank) + b.s[k - 1].scaled(a.rank);
    for (std::size_t i = 1; i < k; ++i)
      acc = acc + (a.s[i - 1] * b.s[k - i - 1]).scaled(binomial(Int(k), static_cast<unsigned>(i)));
    out.s[k - 1] = acc;
  }
  return out;
}

// The generic reduced class: rank 0 and independent formal s-components,
// sharing the variable list of q_n so results compare directly.
inline FormalSClass formal_generic(int n, const Int& m) {
  std::vector<PolyVar> vars = q_closed_form(n, m).vars();
  FormalSClass out{Int(0), {}};
  for (int k = 1; k <= n; ++k)
    out.s.push_back(IntPolynomial::variable(vars, static_cast<std::size_t>(k - 1)));
  return out;
}

// s_n applied to p_n of a generic reduced class equals l(n) q_n(s_1,...,s_n).
inline bool s_of_p_identity(int n, const Int& m) {
  if (n < 1 || n > 5) throw std::invalid_argument("s_of_p_identity: n must be in 1..5");
  FormalSClass e = formal_generic(n, m);
  Int l = lcm_1_to_n(n);
  FormalSClass power = e;
  FormalSClass acc{Int(0), std::vector<IntPolynomial>(e.s.size(),
                                                      IntPolynomial::zero(e.s[0].vars()))};
  for (int k = 1; k <= n; ++k) {
    if (k > 1) power = formal_mul(power, e);
    Int coef = exact_div(l, Int(k)) * pow_int(m, static_cast<unsigned>(n - k));
    if (k % 2 == 0) coef = -coef;
    acc = formal_add(acc, formal_scale(coef, power));
  }
  IntPolynomial target = q_closed_form(n, m).scaled(l);
  return acc.s[static_cast<std::size_t>(n - 1)] == target;
}

// q_n written in Chern classes through the Newton substitution x_k -> Q_k(c).
inline IntPolynomial char_class_formula(int n) {
  std::vector<PolyVar> cvars{{"m", 1}};
  for (int k = 1; k <= n; ++k) cvars.push_back({"c" + std::to_string(k), 1});
  std::map<std::string, IntPolynomial> sub{{"m", IntPolynomial::variable(cvars, 0)}};
  for (int k = 1; k <= n; ++k) {
    std::map<std::string, IntPolynomial> newton_sub;
    for (int i = 1; i <= k; ++i)
      newton_sub["s" + std::to_string(i)] =
          IntPolynomial::variable(cvars, static_cast<std::size_t>(i));
    sub["x" + std::to_string(k)] = newton_poly(k).compose(cvars, newton_sub);
  }
  return q_poly_sym(n).compose(cvars, sub);
}

}  // namespace oeclass
