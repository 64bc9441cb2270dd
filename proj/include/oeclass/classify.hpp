#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oeclass/cohomology.hpp"
#include "oeclass/equivrel.hpp"
#include "oeclass/int_linalg.hpp"
#include "oeclass/int_types.hpp"
#include "oeclass/invariants.hpp"
#include "oeclass/polyfam.hpp"
#include "oeclass/ringcore.hpp"
#include "oeclass/spaces.hpp"

namespace oeclass {

enum class Verdict { yes, no, hypothesis_not_met, undecided };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::hypothesis_not_met: return "hypothesis-not-met";
    default: return "undecided";
  }
}

// Rank-1 bundles have their own decision route; the main procedures refuse them.
class RankRoutingError : public std::invalid_argument {
 public:
  explicit RankRoutingError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct DecisionReport {
  Verdict verdict = Verdict::undecided;
  std::string theorem_path;
  std::vector<std::string> hypothesis_log;
  std::vector<std::string> notes;
  std::optional<VirtualClass> witness;
  std::optional<Int> count;
};

namespace detail {

inline void require_rank_two(const BundleClass& e, const char* who) {
  if (e.rank < 2)
    throw RankRoutingError(std::string(who) +
                           ": rank-1 input; line bundles are decided by decide_line_bundle");
}

inline void check_space_element(const SpaceModel& x, const BundleClass& e, const char* who) {
  if (e.reduced.ring != nullptr && !e.reduced.ring->same_as(x.kring))
    throw std::invalid_argument(std::string(who) + ": bundle not over the given space's ring");
  if (e.reduced.coeff.size() != x.kring.num_generators())
    throw std::invalid_argument(std::string(who) + ": bundle coordinate count mismatch");
}

// 1 - [E] as a virtual class: (1 - rank, -[Etilde])
inline VirtualClass one_minus(const BundleClass& e) {
  return virtual_of(Int(1) - e.rank, ring_neg(e.reduced));
}

inline bool unit_equation_holds(const BundleClass& e, const BundleClass& f,
                                const VirtualClass& h) {
  return virtual_mul(one_minus(f), h) == one_minus(e);
}

inline std::string checked(const std::string& condition, bool ok) {
  return condition + (ok ? ": ok" : ": FAIL");
}

// Whole reduced group as an additive presentation.
inline AbelianGroupPresentation additive_group(const RingPresentation& r) {
  return AbelianGroupPresentation::make(r.num_generators(), r.relation_rows());
}

}  // namespace detail

// O_E sits inside O_F as a unital subalgebra exactly when some h in K^0
// satisfies 1 - [E] = (1 - [F]) h. Splitting h = r + htilde, the integer part
// must solve r (rank F - 1) = rank E - 1 and the reduced part becomes the
// linear system ((rank F - 1) Id + M_[Ftilde]) htilde = [Etilde] - r [Ftilde].
inline DecisionReport decide_embedding(const SpaceModel& x, const BundleClass& e,
                                       const BundleClass& f) {
  detail::require_rank_two(e, "decide_embedding");
  detail::require_rank_two(f, "decide_embedding");
  detail::check_space_element(x, e, "decide_embedding");
  detail::check_space_element(x, f, "decide_embedding");
  const RingPresentation& r = x.kring;

  DecisionReport rep;
  rep.theorem_path = "embedding-unit-factorization";

  Int mf = f.rank - 1;
  if ((e.rank - 1) % mf != 0) {
    rep.verdict = Verdict::no;
    rep.hypothesis_log.push_back(detail::checked(
        "rank equation r*" + mf.str() + " = " + Int(e.rank - 1).str() + " solvable", false));
    return rep;
  }
  Int rpart = (e.rank - 1) / mf;
  rep.hypothesis_log.push_back(detail::checked(
      "rank equation solved: r = " + rpart.str(), true));

  const std::size_t g = r.num_generators();
  IntMatrix lhs = multiplication_endomorphism(r, f.reduced);
  for (std::size_t i = 0; i < g; ++i) lhs.at(i, i) += mf;
  RingElement target = ring_sub(e.reduced, ring_scalar_mul(rpart, f.reduced));
  auto sol = solve_in_quotient(lhs, target.coeff, r.relation_rows());
  if (!sol) {
    rep.verdict = Verdict::no;
    rep.notes.push_back("reduced part has no integral solution");
    return rep;
  }
  VirtualClass h = virtual_of(rpart, make_element(r, sol->x));
  if (!detail::unit_equation_holds(e, f, h))
    throw std::logic_error("decide_embedding: witness fails substitution");
  rep.verdict = Verdict::yes;
  rep.witness = h;
  return rep;
}

// O_E iso O_F needs the h above to have virtual rank one, which forces equal
// ranks and reduces the question to [Etilde] ~ [Ftilde] at m = rank - 1.
inline DecisionReport decide_isomorphism(const SpaceModel& x, const BundleClass& e,
                                         const BundleClass& f) {
  detail::require_rank_two(e, "decide_isomorphism");
  detail::require_rank_two(f, "decide_isomorphism");
  detail::check_space_element(x, e, "decide_isomorphism");
  detail::check_space_element(x, f, "decide_isomorphism");

  DecisionReport rep;
  rep.theorem_path = "iso-rank-one-unit";
  if (e.rank != f.rank) {
    rep.verdict = Verdict::no;
    rep.hypothesis_log.push_back(detail::checked(
        "rank equality " + e.rank.str() + " = " + f.rank.str(), false));
    return rep;
  }
  Int m = e.rank - 1;
  auto h = are_equivalent(x.kring, m, e.reduced, f.reduced);
  if (!h) {
    rep.verdict = Verdict::no;
    return rep;
  }
  VirtualClass unit = virtual_of(Int(1), *h);
  if (!detail::unit_equation_holds(e, f, unit))
    throw std::logic_error("decide_isomorphism: witness fails substitution");
  rep.verdict = Verdict::yes;
  rep.witness = unit;
  return rep;
}

// O_E is the trivial bundle algebra C(X) (x) O_{m+1} exactly when [E] - 1 is
// divisible by m, i.e. [Etilde] = m w modulo the relations.
inline DecisionReport trivialization_test(const SpaceModel& x, const BundleClass& e) {
  detail::require_rank_two(e, "trivialization_test");
  detail::check_space_element(x, e, "trivialization_test");
  DecisionReport rep;
  rep.theorem_path = "trivialization-divisibility";
  Int m = e.rank - 1;
  auto w = is_divisible(e.reduced, m, {});
  if (!w) {
    std::string red = pretty(e.reduced);
    std::string virt = m.str() + (red == "0" ? "" : (red[0] == '-' ? red : "+" + red));
    rep.verdict = Verdict::no;
    rep.notes.push_back("[E]-1 = " + virt + " is not divisible by " + m.str());
    return rep;
  }
  VirtualClass unit = virtual_of(Int(1), *w);
  BundleClass trivial = make_bundle(e.rank, ring_zero(x.kring));
  if (!detail::unit_equation_holds(e, trivial, unit))
    throw std::logic_error("trivialization_test: witness fails substitution");
  rep.verdict = Verdict::yes;
  rep.witness = unit;
  return rep;
}

// Closed-form route: with d = [Etilde] - [Ftilde] and b = [Ftilde], the class
// d (sum over k of (-1)^(k-1) m^(n-k) b^(k-1)) is divisible by m^n iff iso,
// provided K0 has no m-torsion and the reduced ring is nilpotent of index n.
inline DecisionReport decide_iso_Tn(const SpaceModel& x, const BundleClass& e,
                                    const BundleClass& f) {
  detail::require_rank_two(e, "decide_iso_Tn");
  detail::require_rank_two(f, "decide_iso_Tn");
  detail::check_space_element(x, e, "decide_iso_Tn");
  detail::check_space_element(x, f, "decide_iso_Tn");
  const RingPresentation& r = x.kring;

  DecisionReport rep;
  rep.theorem_path = "iso-tn-product";
  if (e.rank != f.rank) {
    rep.verdict = Verdict::no;
    rep.hypothesis_log.push_back(detail::checked(
        "rank equality " + e.rank.str() + " = " + f.rank.str(), false));
    return rep;
  }
  Int m = e.rank - 1;
  int n = nilpotency_index(r);
  rep.hypothesis_log.push_back(
      detail::checked("reduced ring nilpotent of index " + std::to_string(n), true));

  auto tor = tor_with_zmod(detail::additive_group(r), m);
  rep.hypothesis_log.push_back(
      detail::checked("Tor(K0, Z/" + m.str() + ") = 0", tor.is_tor_free));

  // the product and its divisibility are informative even when Tor blocks the
  // theorem, so compute them regardless
  RingElement diff = ring_sub(e.reduced, f.reduced);
  RingElement product = ring_zero(r);
  RingElement term = diff;  // diff * b^(k-1)
  for (int k = 1; k <= n; ++k) {
    Int c = pow_int(m, static_cast<unsigned>(n - k));
    if (k % 2 == 0) c = -c;
    product = ring_add(product, ring_scalar_mul(c, term));
    if (k < n) term = ring_mul(term, f.reduced);
  }
  Int modulus = pow_int(m, static_cast<unsigned>(n));
  auto w = is_divisible(product, modulus, {});
  std::string product_note = "product " + pretty(product) + " divisible by " + modulus.str() +
                             ": " + (w ? "yes" : "no");

  DecisionReport unit_route = decide_isomorphism(x, e, f);
  if (!tor.is_tor_free) {
    rep.verdict = Verdict::hypothesis_not_met;
    rep.notes.push_back(product_note);
    if (w && unit_route.verdict == Verdict::no)
      rep.notes.push_back(
          "divisibility holds here while the unit-equation decision is no: without the "
          "torsion-freeness requirement the product test is not conclusive");
    return rep;
  }

  rep.notes.push_back(product_note);
  rep.verdict = w ? Verdict::yes : Verdict::no;
  if (rep.verdict != unit_route.verdict)
    throw std::logic_error("decide_iso_Tn: disagrees with the unit-equation route");
  if (w) rep.witness = unit_route.witness;
  return rep;
}

// Single-polynomial route for X of dimension d: compare p_n at n = floor(d/2).
// Needs gcd(m, n!) = 1 plus integral cohomology free of m-torsion, the latter
// taken as a user assertion and re-checked on the ring through the filtration
// quotients.
inline DecisionReport decide_iso_pn(const SpaceModel& x, const BundleClass& e,
                                    const BundleClass& f) {
  detail::require_rank_two(e, "decide_iso_pn");
  detail::require_rank_two(f, "decide_iso_pn");
  detail::check_space_element(x, e, "decide_iso_pn");
  detail::check_space_element(x, f, "decide_iso_pn");
  const RingPresentation& r = x.kring;

  DecisionReport rep;
  rep.theorem_path = "iso-pn-divisibility";
  if (e.rank != f.rank) {
    rep.verdict = Verdict::no;
    rep.hypothesis_log.push_back(detail::checked(
        "rank equality " + e.rank.str() + " = " + f.rank.str(), false));
    return rep;
  }
  Int m = e.rank - 1;

  if (!x.dim) {
    rep.verdict = Verdict::hypothesis_not_met;
    rep.hypothesis_log.push_back(detail::checked("dimension given", false));
    return rep;
  }
  int n = *x.dim / 2;
  if (n < 1) n = 1;
  rep.hypothesis_log.push_back(
      detail::checked("dimension " + std::to_string(*x.dim) + " gives n = " + std::to_string(n),
                      true));

  bool coprime = gcd_int(m, factorial(static_cast<unsigned>(n))) == 1;
  rep.hypothesis_log.push_back(
      detail::checked("gcd(" + m.str() + ", " + std::to_string(n) + "!) = 1", coprime));

  bool asserted = asserts_torsion_free(x, m);
  rep.hypothesis_log.push_back(detail::checked(
      "cohomology asserted free of " + m.str() + "-torsion", asserted));
  bool level_tor_free = true;
  for (int q = 1; q <= r.max_filtration_level(); ++q) {
    LevelQuotient lq = level_quotient(r, q);
    if (!tor_with_zmod(lq.quotient, m).is_tor_free) {
      level_tor_free = false;
      rep.hypothesis_log.push_back(detail::checked(
          "filtration quotient at level " + std::to_string(q) + " free of " + m.str() +
              "-torsion",
          false));
    }
  }
  if (level_tor_free)
    rep.hypothesis_log.push_back(
        detail::checked("filtration quotients free of " + m.str() + "-torsion", true));

  // informative regardless of the hypotheses
  IntPolynomial pn = p_poly(n, m);
  RingElement diff =
      ring_sub(eval_poly(r, pn, {{"x", e.reduced}}), eval_poly(r, pn, {{"x", f.reduced}}));
  Int modulus = pow_int(m, static_cast<unsigned>(n));
  auto w = is_divisible(diff, modulus, {});
  std::string diff_note = "p_" + std::to_string(n) + " difference " + pretty(diff) +
                          " divisible by " + modulus.str() + ": " + (w ? "yes" : "no");
  rep.notes.push_back(diff_note);

  if (!coprime || !asserted || !level_tor_free) {
    rep.verdict = Verdict::hypothesis_not_met;
    if (!coprime && w) {
      DecisionReport unit_route = decide_isomorphism(x, e, f);
      if (unit_route.verdict == Verdict::no)
        rep.notes.push_back(
            "divisibility holds here while the unit-equation decision is no: without the "
            "coprimality requirement the p_n test is not conclusive");
    }
    return rep;
  }

  if (!w) {
    rep.verdict = Verdict::no;
    return rep;
  }
  auto h = are_equivalent(r, m, e.reduced, f.reduced);
  if (!h) throw std::logic_error("decide_iso_pn: divisibility holds but no unit witness exists");
  VirtualClass unit = virtual_of(Int(1), *h);
  if (!detail::unit_equation_holds(e, f, unit))
    throw std::logic_error("decide_iso_pn: witness fails substitution");
  rep.verdict = Verdict::yes;
  rep.witness = unit;
  return rep;
}

// Number of isomorphism classes of the algebras O_E over X at fixed rank m+1:
// the cardinality of K0tilde (x) Z/m, which also equals that of the reduced
// even cohomology with Z/m coefficients when the hypotheses hold.
inline DecisionReport count_algebras(const SpaceModel& x, const Int& m) {
  if (m < 1) throw std::invalid_argument("count_algebras: m must be >= 1");
  DecisionReport rep;
  rep.theorem_path = "count-tensor";

  if (!x.dim) {
    rep.verdict = Verdict::hypothesis_not_met;
    rep.hypothesis_log.push_back(detail::checked("dimension given", false));
    return rep;
  }
  int d = *x.dim;
  Int bound = -floor_div(Int(3 - d), 2);  // ceil((d-3)/2)
  bool m_large = m >= bound;
  rep.hypothesis_log.push_back(detail::checked(
      "m = " + m.str() + " >= ceil((d-3)/2) = " + bound.str(), m_large));
  if (!m_large)
    rep.notes.push_back(
        "below this bound the tensor count can miss classes, as happens for an "
        "8-dimensional sphere at m = 2");

  bool asserted = asserts_torsion_free(x, m);
  rep.hypothesis_log.push_back(detail::checked(
      "cohomology asserted free of " + m.str() + "-torsion", asserted));
  if (!asserted)
    rep.notes.push_back(
        "with m-torsion in cohomology the tensor count can be wrong, as happens for the "
        "suspension of a real projective plane");

  Int count = tensor_with_zmod(detail::additive_group(x.kring), m).cardinality;
  rep.notes.push_back("|K0tilde (x) Z/" + m.str() + "| = " + count.str());

  bool coh_match = true;
  if (x.cohomology) {
    Int hcount = tensor_with_zmod(detail::additive_group(x.cohomology->ring), m).cardinality;
    coh_match = hcount == count;
    rep.hypothesis_log.push_back(detail::checked(
        "|Heven_tilde (x) Z/" + m.str() + "| = " + hcount.str() + " matches", coh_match));
  }

  if (!m_large || !asserted || !coh_match) {
    rep.verdict = Verdict::hypothesis_not_met;
    return rep;
  }

  // the class count from the equivalence relation must agree whenever it is
  // itself computable
  try {
    ClassCount classes = count_classes(x.kring, m);
    if (classes.count != count)
      throw std::logic_error("count_algebras: tensor count disagrees with class count");
  } catch (const HypothesisError&) {
  }

  rep.verdict = Verdict::yes;
  rep.count = count;
  return rep;
}

// Line bundles are determined by the first Chern class up to conjugation.
inline DecisionReport decide_line_bundle(const CohomologyRing& h, const CohomologyClass& c1e,
                                         const CohomologyClass& c1f) {
  if (c1e.degree != 2 || c1f.degree != 2)
    throw std::invalid_argument("decide_line_bundle: first Chern classes live in degree 2");
  DecisionReport rep;
  rep.theorem_path = "line-bundle-c1";
  if (c1e.element == c1f.element) {
    rep.verdict = Verdict::yes;
    rep.notes.push_back("c1(E) = c1(F)");
  } else if (c1e.element == ring_neg(c1f.element)) {
    rep.verdict = Verdict::yes;
    rep.notes.push_back("c1(E) = -c1(F): E is the conjugate of F");
  } else {
    rep.verdict = Verdict::no;
  }
  return rep;
}

// Over a suspension all reduced products vanish, so b h = 0 collapses the
// equivalence to the componentwise congruence [Etilde] = [Ftilde] mod m.
inline DecisionReport decide_suspension(const SpaceModel& x, const Int& m, const BundleClass& e,
                                        const BundleClass& f) {
  detail::require_rank_two(e, "decide_suspension");
  detail::require_rank_two(f, "decide_suspension");
  detail::check_space_element(x, e, "decide_suspension");
  detail::check_space_element(x, f, "decide_suspension");
  check_rank(e, m, "decide_suspension");
  check_rank(f, m, "decide_suspension");
  const RingPresentation& r = x.kring;
  for (std::size_t i = 0; i < r.num_generators(); ++i)
    for (std::size_t j = i; j < r.num_generators(); ++j)
      for (const Int& c : r.product_of_generators(i, j))
        if (c != 0)
          throw std::invalid_argument(
              "decide_suspension: ring has a nonzero product, not a suspension model");

  DecisionReport rep;
  rep.theorem_path = "suspension-congruence";
  auto w = is_divisible(ring_sub(e.reduced, f.reduced), m, {});
  auto h = are_equivalent(r, m, e.reduced, f.reduced);
  if (w.has_value() != h.has_value())
    throw std::logic_error("decide_suspension: congruence disagrees with the unit route");
  if (!w) {
    rep.verdict = Verdict::no;
    return rep;
  }
  VirtualClass unit = virtual_of(Int(1), *w);
  if (!detail::unit_equation_holds(e, f, unit))
    throw std::logic_error("decide_suspension: witness fails substitution");
  rep.verdict = Verdict::yes;
  rep.witness = unit;
  return rep;
}

}  // namespace oeclass
