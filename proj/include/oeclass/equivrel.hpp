#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oeclass/int_linalg.hpp"
#include "oeclass/int_types.hpp"
#include "oeclass/polyfam.hpp"
#include "oeclass/ringcore.hpp"

namespace oeclass {

class SearchSpaceError : public std::runtime_error {
 public:
  explicit SearchSpaceError(const std::string& msg) : std::runtime_error(msg) {}
};

// a ~ b  iff  a = b + m h + b h for some h, i.e. m+a = (m+b)(1+h) in Z + R.

namespace detail {

inline std::vector<Int> row_times_matrix(const std::vector<Int>& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("row_times_matrix: size mismatch");
  std::vector<Int> out(m.cols(), Int(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m.at(i, j);
  }
  return out;
}

inline IntMatrix inverse_unimodular(const IntMatrix& v) {
  const std::size_t n = v.rows();
  if (v.cols() != n) throw std::invalid_argument("inverse_unimodular: not square");
  Int det = determinant(v);
  if (det != 1 && det != -1) throw std::invalid_argument("inverse_unimodular: not unimodular");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(rr, cc) = v.at(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv.at(i, j) = cof * det;  // det = +-1, so this divides by det
    }
  return inv;
}

}  // namespace detail

// Witness for a ~ b, found by one linear solve: (m Id + M_b) h = a - b
// modulo the relation lattice. Complete because the left side is exactly
// h -> m h + b h on classes.
inline std::optional<RingElement> are_equivalent(const RingPresentation& r, const Int& m,
                                                 const RingElement& a, const RingElement& b) {
  if (m < 1) throw std::invalid_argument("are_equivalent: m must be >= 1");
  check_same_ring(a, b);
  const std::size_t g = r.num_generators();
  IntMatrix lhs = multiplication_endomorphism(r, b);
  for (std::size_t i = 0; i < g; ++i) lhs.at(i, i) += m;
  std::vector<Int> rhs(g);
  for (std::size_t i = 0; i < g; ++i) rhs[i] = a.coeff[i] - b.coeff[i];
  auto sol = solve_in_quotient(lhs, rhs, r.relation_rows());
  if (!sol) return std::nullopt;
  RingElement h = make_element(r, sol->x);
  RingElement check = ring_add(b, ring_add(ring_scalar_mul(m, h), ring_mul(b, h)));
  if (!(check == a)) throw std::logic_error("are_equivalent: witness fails substitution");
  return h;
}

// Exhaustive oracle: free coordinates range over [-bound, bound], torsion
// coordinates over their full cyclic range. First witness in lexicographic
// enumeration order. Throws SearchSpaceError past the candidate cap.
inline std::optional<RingElement> brute_force_equivalent(const RingPresentation& r, const Int& m,
                                                         const RingElement& a,
                                                         const RingElement& b, const Int& bound,
                                                         std::uint64_t cap = 20000000ull) {
  if (m < 1) throw std::invalid_argument("brute_force_equivalent: m must be >= 1");
  check_same_ring(a, b);
  const std::size_t g = r.num_generators();
  std::vector<Int> lo(g), hi(g);
  Int total = 1;
  for (std::size_t i = 0; i < g; ++i) {
    const Int& o = r.torsion_orders()[i];
    if (o > 0) {
      lo[i] = 0;
      hi[i] = o - 1;
    } else {
      lo[i] = -bound;
      hi[i] = bound;
    }
    total *= hi[i] - lo[i] + 1;
  }
  if (total > Int(cap))
    throw SearchSpaceError("brute_force_equivalent: " + total.str() + " candidates exceed cap");
  std::vector<Int> h = lo;
  while (true) {
    RingElement he = make_element(r, h);
    RingElement check = ring_add(b, ring_add(ring_scalar_mul(m, he), ring_mul(b, he)));
    if (check == a) return he;
    std::size_t i = g;
    while (i > 0) {
      --i;
      if (h[i] < hi[i]) {
        ++h[i];
        for (std::size_t j = i + 1; j < g; ++j) h[j] = lo[j];
        break;
      }
      if (i == 0) return std::nullopt;
    }
    if (g == 0) return std::nullopt;
  }
}

// Per-level data for the filtration quotients R_k / R_{k+1}.
struct LevelQuotient {
  int level = 0;
  std::vector<std::size_t> exact;     // generator indices with level == k
  std::vector<std::size_t> at_least;  // generator indices with level >= k
  AbelianGroupPresentation quotient;  // on the `exact` generators
  IntMatrix snf_v, snf_v_inv;         // column transform of the quotient relations
  std::vector<std::size_t> free_cols; // columns of the diagonal form with d = 0
  std::vector<Int> torsion_diag;      // nonzero diagonal entries
};

// Presentation of R_k / R_{k+1} on the level-k generators: relations are the
// T_k-restrictions of lattice vectors of (F_{k+1} + relations) supported on F_k.
inline LevelQuotient level_quotient(const RingPresentation& r, int k) {
  const std::size_t g = r.num_generators();
  LevelQuotient q;
  q.level = k;
  for (std::size_t i = 0; i < g; ++i) {
    if (r.filtration_levels()[i] == k) q.exact.push_back(i);
    if (r.filtration_levels()[i] >= k) q.at_least.push_back(i);
  }
  // generator rows of F_{k+1} + relation lattice
  IntMatrix gen(0, g);
  for (std::size_t i = 0; i < g; ++i)
    if (r.filtration_levels()[i] >= k + 1) {
      std::vector<Int> e(g, Int(0));
      e[i] = 1;
      gen.append_row(e);
    }
  for (std::size_t i = 0; i < r.relation_rows().rows(); ++i)
    gen.append_row(r.relation_rows().row(i));

  // combinations landing inside F_k: left kernel of the low-level columns
  std::vector<std::size_t> low;
  for (std::size_t i = 0; i < g; ++i)
    if (r.filtration_levels()[i] < k) low.push_back(i);
  IntMatrix low_cols(gen.rows(), low.size());
  for (std::size_t i = 0; i < gen.rows(); ++i)
    for (std::size_t j = 0; j < low.size(); ++j) low_cols.at(i, j) = gen.at(i, low[j]);
  std::vector<std::vector<Int>> combos;
  if (low.empty()) {
    for (std::size_t i = 0; i < gen.rows(); ++i) {
      std::vector<Int> e(gen.rows(), Int(0));
      e[i] = 1;
      combos.push_back(e);
    }
  } else {
    combos = integer_kernel(low_cols.transpose());
  }

  IntMatrix rel(0, q.exact.size());
  for (const auto& c : combos) {
    std::vector<Int> v = detail::row_times_matrix(c, gen);
    std::vector<Int> restricted(q.exact.size());
    for (std::size_t j = 0; j < q.exact.size(); ++j) restricted[j] = v[q.exact[j]];
    rel.append_row(restricted);
  }
  q.quotient = AbelianGroupPresentation::make(q.exact.size(), rel);

  if (q.exact.empty()) {
    q.snf_v = IntMatrix::identity(0);
    q.snf_v_inv = IntMatrix::identity(0);
    return q;
  }
  SnfDecomposition s = smith_normal_form(rel);
  q.snf_v = s.V;
  q.snf_v_inv = detail::inverse_unimodular(q.snf_v);
  for (std::size_t j = 0; j < q.exact.size(); ++j) {
    if (j < s.rank)
      q.torsion_diag.push_back(s.D.at(j, j));
    else
      q.free_cols.push_back(j);
  }
  return q;
}

struct EquivalenceStructure {
  Int m;
  int max_level = 0;
  std::vector<LevelQuotient> levels;  // k = 1 .. max_level
};

inline EquivalenceStructure build_structure(const RingPresentation& r, const Int& m) {
  if (m < 1) throw std::invalid_argument("build_structure: m must be >= 1");
  EquivalenceStructure s;
  s.m = m;
  s.max_level = r.max_filtration_level();
  for (int k = 1; k <= s.max_level; ++k) s.levels.push_back(level_quotient(r, k));
  return s;
}

// Hypothesis of the counting theorem: every filtration quotient must be
// m-torsion-free. Returns the first failing level, if any.
inline std::optional<int> tor_obstruction_level(const EquivalenceStructure& s) {
  for (const LevelQuotient& q : s.levels) {
    if (!tor_with_zmod(q.quotient, s.m).is_tor_free) return q.level;
  }
  return std::nullopt;
}

namespace detail {

// Representatives of (R_k/R_{k+1}) (x) Z/m, lifted to elements supported on
// the level-k generators. Requires the Tor hypothesis at this level.
struct LevelClasses {
  std::vector<RingElement> lifts;                 // in enumeration order
  std::map<std::vector<Int>, std::size_t> index;  // free-coordinate key -> lift
};

inline LevelClasses level_classes(const RingPresentation& r, const LevelQuotient& q,
                                  const Int& m) {
  LevelClasses out;
  const std::size_t nf = q.free_cols.size();
  std::vector<Int> key(nf, Int(0));
  while (true) {
    std::vector<Int> y(q.exact.size(), Int(0));
    for (std::size_t j = 0; j < nf; ++j) y[q.free_cols[j]] = key[j];
    std::vector<Int> x = row_times_matrix(y, q.snf_v_inv);
    std::vector<Int> full(r.num_generators(), Int(0));
    for (std::size_t j = 0; j < q.exact.size(); ++j) full[q.exact[j]] = x[j];
    out.index[key] = out.lifts.size();
    out.lifts.push_back(make_element(r, full));
    std::size_t i = nf;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (key[i] + 1 < m) {
        ++key[i];
        for (std::size_t j = i + 1; j < nf; ++j) key[j] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

// Class key of an element of R_k: its T_k coordinates carried through the
// column transform, free positions reduced mod m.
inline std::vector<Int> class_key(const RingPresentation& r, const LevelQuotient& q, const Int& m,
                                  const RingElement& x) {
  // find v in F_k with v = x modulo the relation lattice
  const std::size_t g = r.num_generators();
  IntMatrix bk(g, q.at_least.size());
  for (std::size_t j = 0; j < q.at_least.size(); ++j) bk.at(q.at_least[j], j) = 1;
  auto sol = solve_in_quotient(bk, x.coeff, r.relation_rows());
  if (!sol) throw std::logic_error("class_key: element not in the expected filtration step");
  std::vector<Int> proj(q.exact.size(), Int(0));
  for (std::size_t j = 0; j < q.at_least.size(); ++j) {
    std::size_t gi = q.at_least[j];
    if (r.filtration_levels()[gi] != q.level) continue;
    for (std::size_t t = 0; t < q.exact.size(); ++t)
      if (q.exact[t] == gi) proj[t] = sol->x[j];
  }
  std::vector<Int> y = row_times_matrix(proj, q.snf_v);
  std::vector<Int> key(q.free_cols.size());
  for (std::size_t j = 0; j < q.free_cols.size(); ++j)
    key[j] = floor_mod(y[q.free_cols[j]], m);
  return key;
}

}  // namespace detail

struct ClassCount {
  Int count = 1;
  std::vector<std::pair<int, Int>> per_level;  // (level, factor)
};

// |R / ~| under the Tor hypothesis: the product over filtration levels of
// |R_k/R_{k+1} (x) Z/m|.
inline ClassCount count_classes(const RingPresentation& r, const Int& m) {
  EquivalenceStructure s = build_structure(r, m);
  if (auto bad = tor_obstruction_level(s))
    throw HypothesisError("count_classes: filtration quotient at level " +
                          std::to_string(*bad) + " has m-torsion");
  ClassCount out;
  for (const LevelQuotient& q : s.levels) {
    Int f = tensor_with_zmod(q.quotient, m).cardinality;
    out.per_level.push_back({q.level, f});
    out.count *= f;
  }
  // independent route: under the Tor hypothesis the level product equals the
  // cardinality of the whole additive group tensored with Z/m
  AbelianGroupPresentation whole =
      AbelianGroupPresentation::make(r.num_generators(), r.relation_rows());
  Int direct = tensor_with_zmod(whole, m).cardinality;
  if (direct != out.count)
    throw std::logic_error("count_classes: level product disagrees with the tensor count");
  return out;
}

// Canonical representatives: sums of one lifted class per filtration level,
// ordered by level then by class coordinates.
inline std::vector<RingElement> canonical_representatives(const RingPresentation& r,
                                                          const Int& m) {
  EquivalenceStructure s = build_structure(r, m);
  if (auto bad = tor_obstruction_level(s))
    throw HypothesisError("canonical_representatives: filtration quotient at level " +
                          std::to_string(*bad) + " has m-torsion");
  std::vector<RingElement> reps{ring_zero(r)};
  for (const LevelQuotient& q : s.levels) {
    detail::LevelClasses classes = detail::level_classes(r, q, m);
    std::vector<RingElement> next;
    for (const RingElement& base : reps)
      for (const RingElement& lift : classes.lifts) next.push_back(ring_add(base, lift));
    reps = std::move(next);
  }
  return reps;
}

struct Reduction {
  RingElement representative;
  RingElement witness;                  // h with m+x = (m+rep)(1+h)^{-1} composed, see below
  std::vector<RingElement> level_steps; // h_k per level
};

// Walk the filtration: at each level replace the current class with its
// canonical representative, pushing the error one level deeper. Ends with the
// residual in R_{max+1} = 0. The composite witness H satisfies
// m + rep = (m + x)(1 + H).
inline Reduction reduce_to_representative(const RingPresentation& r, const Int& m,
                                          const RingElement& x) {
  EquivalenceStructure s = build_structure(r, m);
  if (auto bad = tor_obstruction_level(s))
    throw HypothesisError("reduce_to_representative: filtration quotient at level " +
                          std::to_string(*bad) + " has m-torsion");
  const std::size_t g = r.num_generators();
  RingElement w = ring_zero(r);
  RingElement xk = x;
  Reduction out{ring_zero(r), ring_zero(r), {}};
  int guard = 0;
  for (const LevelQuotient& q : s.levels) {
    if (++guard > s.max_level + 1)
      throw std::logic_error("reduce_to_representative: descent exceeded level bound");
    detail::LevelClasses classes = detail::level_classes(r, q, m);
    std::vector<Int> key = detail::class_key(r, q, m, xk);
    const RingElement& ak = classes.lifts[classes.index.at(key)];

    // a_k - x_k = m h_k + y_{k+1} with h_k in R_k, y_{k+1} in R_{k+1}
    std::vector<std::size_t> next_idx;
    for (std::size_t i = 0; i < g; ++i)
      if (r.filtration_levels()[i] >= q.level + 1) next_idx.push_back(i);
    IntMatrix a(g, q.at_least.size() + next_idx.size());
    for (std::size_t j = 0; j < q.at_least.size(); ++j) a.at(q.at_least[j], j) = m;
    for (std::size_t j = 0; j < next_idx.size(); ++j)
      a.at(next_idx[j], q.at_least.size() + j) = 1;
    std::vector<Int> rhs(g);
    for (std::size_t i = 0; i < g; ++i) rhs[i] = ak.coeff[i] - xk.coeff[i];
    auto sol = solve_in_quotient(a, rhs, r.relation_rows());
    if (!sol) throw std::logic_error("reduce_to_representative: level step unsolvable");
    std::vector<Int> hv(g, Int(0)), yv(g, Int(0));
    for (std::size_t j = 0; j < q.at_least.size(); ++j) hv[q.at_least[j]] = sol->x[j];
    for (std::size_t j = 0; j < next_idx.size(); ++j)
      yv[next_idx[j]] = sol->x[q.at_least.size() + j];
    RingElement hk = make_element(r, hv);
    RingElement yk1 = make_element(r, yv);

    RingElement wx = ring_add(w, xk);
    xk = ring_sub(ring_mul(wx, hk), yk1);
    w = ring_add(w, ak);
    out.level_steps.push_back(hk);
  }
  if (!xk.is_zero())
    throw std::logic_error("reduce_to_representative: nonzero residual after last level");
  out.representative = w;
  // composite witness: 1 + H = prod (1 + h_k)
  VirtualClass prod = virtual_int(1, r);
  for (const RingElement& hk : out.level_steps)
    prod = virtual_mul(prod, virtual_add(virtual_int(1, r), VirtualClass{Int(0), hk}));
  out.witness = prod.t;
  // soundness: m + rep = (m + x)(1 + H)
  VirtualClass lhs = virtual_add(virtual_int(m, r), VirtualClass{Int(0), out.representative});
  VirtualClass rhs2 = virtual_mul(virtual_add(virtual_int(m, r), VirtualClass{Int(0), x}),
                                  virtual_add(virtual_int(1, r), VirtualClass{Int(0), out.witness}));
  if (!(lhs == rhs2)) throw std::logic_error("reduce_to_representative: witness check failed");
  return out;
}

struct LemmaBResult {
  RingElement product;   // (a-b) T_n(b)
  RingElement expected;  // m^n h
  bool matches;
};

// Forward direction: from a = b + m h + b h and R^{n+1} = 0 conclude
// (a-b) T_n(b) = m^n h.
inline LemmaBResult lemma_b_forward(const RingPresentation& r, const Int& m, int n,
                                    const RingElement& a, const RingElement& b,
                                    const RingElement& h) {
  if (!submodule_is_zero(r, ideal_power(r, n + 1)))
    throw HypothesisError("lemma_b_forward: R^(n+1) does not vanish");
  RingElement rel = ring_add(b, ring_add(ring_scalar_mul(m, h), ring_mul(b, h)));
  if (!(rel == a)) throw HypothesisError("lemma_b_forward: a = b + mh + bh fails");
  std::vector<PolyVar> zy{{"z", 1}, {"y", 1}};
  IntPolynomial zt = IntPolynomial::variable(zy, 0) *
                     T_poly(n, m).compose(zy, {{"b", IntPolynomial::variable(zy, 1)}});
  std::map<std::string, RingElement> asg{{"z", ring_sub(a, b)}, {"y", b}};
  LemmaBResult out{eval_poly(r, zt, asg),
                   ring_scalar_mul(pow_int(m, static_cast<unsigned>(n)), h), false};
  out.matches = out.product == out.expected;
  return out;
}

// Converse: from (a-b) T_n(b) = m^n h and R^{n+1} = 0 conclude
// m^n (a - b - m h - b h) = 0.
inline bool lemma_b_converse(const RingPresentation& r, const Int& m, int n,
                             const RingElement& a, const RingElement& b, const RingElement& h) {
  if (!submodule_is_zero(r, ideal_power(r, n + 1)))
    throw HypothesisError("lemma_b_converse: R^(n+1) does not vanish");
  std::vector<PolyVar> zy{{"z", 1}, {"y", 1}};
  IntPolynomial zt = IntPolynomial::variable(zy, 0) *
                     T_poly(n, m).compose(zy, {{"b", IntPolynomial::variable(zy, 1)}});
  std::map<std::string, RingElement> asg{{"z", ring_sub(a, b)}, {"y", b}};
  RingElement prod = eval_poly(r, zt, asg);
  if (!(prod == ring_scalar_mul(pow_int(m, static_cast<unsigned>(n)), h)))
    throw HypothesisError("lemma_b_converse: (a-b)T_n(b) = m^n h fails");
  RingElement defect =
      ring_sub(ring_sub(a, b), ring_add(ring_scalar_mul(m, h), ring_mul(b, h)));
  return ring_scalar_mul(pow_int(m, static_cast<unsigned>(n)), defect).is_zero();
}

struct LemmaCDecision {
  bool equivalent;
  int n;
  RingElement difference;  // p_n(a) - p_n(b)
  std::optional<RingElement> witness;
};

// Divisibility criterion: with R^{n+1} = 0 and gcd(m, n!) = 1, the classes of
// a and b agree iff p_n(a) - p_n(b) is divisible by m^n.
inline LemmaCDecision lemma_c_decide(const RingPresentation& r, const Int& m,
                                     const RingElement& a, const RingElement& b) {
  int n = std::max(1, r.max_filtration_level());
  if (!submodule_is_zero(r, ideal_power(r, n + 1)))
    throw HypothesisError("lemma_c_decide: R^(n+1) does not vanish");
  if (gcd_int(m, factorial(static_cast<unsigned>(n))) != 1)
    throw HypothesisError("lemma_c_decide: gcd(m, n!) = 1 fails for n = " + std::to_string(n));
  IntPolynomial p = p_poly(n, m);
  RingElement pa = eval_poly(r, p, {{"x", a}});
  RingElement pb = eval_poly(r, p, {{"x", b}});
  LemmaCDecision out{false, n, ring_sub(pa, pb), std::nullopt};
  auto w = is_divisible(out.difference, pow_int(m, static_cast<unsigned>(n)), {});
  if (w) {
    out.equivalent = true;
    out.witness = *w;
  }
  return out;
}

}  // namespace oeclass
