#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oeclass/int_linalg.hpp"
#include "oeclass/int_types.hpp"
#include "oeclass/polynomial.hpp"

namespace oeclass {

class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

class NotNilpotentError : public std::runtime_error {
 public:
  explicit NotNilpotentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Presentation of a finitely generated ring without unit, nilpotent, carrying
// a multiplicative filtration level per generator. Additively the ring is
// Z^g modulo torsion orders and optional extra relations.
class RingPresentation {
 public:
  RingPresentation() = default;

  RingPresentation(std::vector<std::string> names, std::vector<Int> torsion_orders,
                   std::vector<int> filtration_levels,
                   std::map<std::pair<std::size_t, std::size_t>, std::vector<Int>> products,
                   IntMatrix extra_relations = IntMatrix())
      : names_(std::move(names)),
        orders_(std::move(torsion_orders)),
        levels_(std::move(filtration_levels)),
        products_(std::move(products)),
        extra_relations_(std::move(extra_relations)) {
    const std::size_t g = names_.size();
    if (orders_.size() != g || levels_.size() != g)
      throw std::invalid_argument("RingPresentation: field sizes disagree");
    for (const Int& o : orders_)
      if (o < 0) throw std::invalid_argument("RingPresentation: negative torsion order");
    if (extra_relations_.rows() > 0 && extra_relations_.cols() != g)
      throw std::invalid_argument("RingPresentation: relation width mismatch");
    for (const auto& [key, vec] : products_) {
      if (key.first > key.second || key.second >= g)
        throw std::invalid_argument("RingPresentation: bad product key");
      if (vec.size() != g)
        throw std::invalid_argument("RingPresentation: product vector width mismatch");
    }
    relation_rows_ = IntMatrix(0, g);
    for (std::size_t i = 0; i < g; ++i) {
      if (orders_[i] > 0) {
        std::vector<Int> row(g, Int(0));
        row[i] = orders_[i];
        relation_rows_.append_row(row);
      }
    }
    for (std::size_t i = 0; i < extra_relations_.rows(); ++i)
      relation_rows_.append_row(extra_relations_.row(i));
    relation_hnf_ = hermite_row_basis(relation_rows_);
  }

  std::size_t num_generators() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<Int>& torsion_orders() const { return orders_; }
  const std::vector<int>& filtration_levels() const { return levels_; }
  const IntMatrix& extra_relations() const { return extra_relations_; }
  const IntMatrix& relation_rows() const { return relation_rows_; }

  int max_filtration_level() const {
    int l = 0;
    for (int x : levels_) l = std::max(l, x);
    return l;
  }

  const std::vector<Int>& product_of_generators(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = products_.find({i, j});
    if (it != products_.end()) return it->second;
    if (zero_.size() != names_.size()) zero_.assign(names_.size(), Int(0));
    return zero_;
  }

  std::vector<Int> reduce(std::vector<Int> v) const {
    if (v.size() != names_.size()) throw std::invalid_argument("reduce: width mismatch");
    return hermite_reduce(std::move(v), relation_hnf_);
  }

  bool in_relation_lattice(const std::vector<Int>& v) const {
    std::vector<Int> r = reduce(v);
    for (const Int& x : r)
      if (x != 0) return false;
    return true;
  }

  bool same_as(const RingPresentation& o) const {
    return names_ == o.names_ && orders_ == o.orders_ && levels_ == o.levels_ &&
           products_ == o.products_ && extra_relations_ == o.extra_relations_;
  }

  const std::map<std::pair<std::size_t, std::size_t>, std::vector<Int>>& products() const {
    return products_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Int> orders_;
  std::vector<int> levels_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Int>> products_;
  IntMatrix extra_relations_;
  IntMatrix relation_rows_;
  IntMatrix relation_hnf_;
  mutable std::vector<Int> zero_;
};

// Element of the ring, stored as the canonical reduced coefficient vector.
// Holds a non-owning pointer; the presentation must outlive its elements.
struct RingElement {
  const RingPresentation* ring = nullptr;
  std::vector<Int> coeff;

  bool operator==(const RingElement& o) const {
    return ring_matches(o) && coeff == o.coeff;
  }
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  bool operator<(const RingElement& o) const { return coeff < o.coeff; }

  bool is_zero() const {
    for (const Int& c : coeff)
      if (c != 0) return false;
    return true;
  }

 private:
  bool ring_matches(const RingElement& o) const {
    return ring == o.ring || (ring && o.ring && ring->same_as(*o.ring));
  }
};

inline void check_same_ring(const RingElement& a, const RingElement& b) {
  if (a.ring == b.ring) return;
  if (a.ring && b.ring && a.ring->same_as(*b.ring)) return;
  throw std::invalid_argument("ring element presentation mismatch");
}

inline RingElement make_element(const RingPresentation& r, std::vector<Int> coeff) {
  return RingElement{&r, r.reduce(std::move(coeff))};
}

inline RingElement ring_zero(const RingPresentation& r) {
  return RingElement{&r, std::vector<Int>(r.num_generators(), Int(0))};
}

inline RingElement ring_generator(const RingPresentation& r, std::size_t i) {
  if (i >= r.num_generators()) throw std::out_of_range("ring_generator: bad index");
  std::vector<Int> c(r.num_generators(), Int(0));
  c[i] = 1;
  return make_element(r, std::move(c));
}

inline RingElement ring_add(const RingElement& a, const RingElement& b) {
  check_same_ring(a, b);
  std::vector<Int> c(a.coeff.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff[i] + b.coeff[i];
  return make_element(*a.ring, std::move(c));
}

inline RingElement ring_neg(const RingElement& a) {
  std::vector<Int> c(a.coeff.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coeff[i];
  return make_element(*a.ring, std::move(c));
}

inline RingElement ring_sub(const RingElement& a, const RingElement& b) {
  return ring_add(a, ring_neg(b));
}

inline RingElement ring_scalar_mul(const Int& k, const RingElement& a) {
  std::vector<Int> c(a.coeff.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * a.coeff[i];
  return make_element(*a.ring, std::move(c));
}

inline RingElement ring_mul(const RingElement& a, const RingElement& b) {
  check_same_ring(a, b);
  const RingPresentation& r = *a.ring;
  const std::size_t g = r.num_generators();
  std::vector<Int> c(g, Int(0));
  for (std::size_t i = 0; i < g; ++i) {
    if (a.coeff[i] == 0) continue;
    for (std::size_t j = 0; j < g; ++j) {
      if (b.coeff[j] == 0) continue;
      const std::vector<Int>& sc = r.product_of_generators(i, j);
      Int f = a.coeff[i] * b.coeff[j];
      for (std::size_t t = 0; t < g; ++t)
        if (sc[t] != 0) c[t] += f * sc[t];
    }
  }
  return make_element(r, std::move(c));
}

inline std::string pretty(const RingElement& a) {
  std::ostringstream os;
  bool first = true;
  const auto& names = a.ring->generator_names();
  for (std::size_t i = 0; i < a.coeff.size(); ++i) {
    const Int& c = a.coeff[i];
    if (c == 0) continue;
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    Int mag = abs_int(c);
    if (mag != 1) os << mag.str();
    os << names[i];
    first = false;
  }
  if (first) return "0";
  return os.str();
}

// Z + R, the unitalization; carries evaluation of polynomials with constant
// terms and the rank part of K-theory classes.
struct VirtualClass {
  Int n;          // integer part
  RingElement t;  // reduced part

  bool operator==(const VirtualClass& o) const { return n == o.n && t == o.t; }
};

inline VirtualClass virtual_of(const Int& n, const RingElement& t) { return {n, t}; }

inline VirtualClass virtual_int(const Int& n, const RingPresentation& r) {
  return {n, ring_zero(r)};
}

inline VirtualClass virtual_add(const VirtualClass& a, const VirtualClass& b) {
  return {a.n + b.n, ring_add(a.t, b.t)};
}

inline VirtualClass virtual_sub(const VirtualClass& a, const VirtualClass& b) {
  return {a.n - b.n, ring_sub(a.t, b.t)};
}

inline VirtualClass virtual_mul(const VirtualClass& a, const VirtualClass& b) {
  RingElement cross =
      ring_add(ring_add(ring_scalar_mul(a.n, b.t), ring_scalar_mul(b.n, a.t)), ring_mul(a.t, b.t));
  return {a.n * b.n, cross};
}

inline VirtualClass virtual_scalar_mul(const Int& k, const VirtualClass& a) {
  return {k * a.n, ring_scalar_mul(k, a.t)};
}

inline std::string pretty(const VirtualClass& a) {
  if (a.t.is_zero()) return a.n.str();
  std::string tail = pretty(a.t);
  if (a.n == 0) return tail;
  std::string head = a.n.str();
  if (!tail.empty() && tail[0] != '-') head += "+";
  return head + tail;
}

// Exact evaluation of an integer polynomial at ring elements, Horner-style in
// the unitalization. The assignment must cover every variable.
inline VirtualClass eval_poly_virtual(const RingPresentation& r, const IntPolynomial& p,
                                      const std::map<std::string, RingElement>& assignment) {
  std::vector<RingElement> values;
  for (const PolyVar& v : p.vars()) {
    auto it = assignment.find(v.name);
    if (it == assignment.end())
      throw std::invalid_argument("eval_poly: no value for variable " + v.name);
    if (it->second.ring != &r && !(it->second.ring && it->second.ring->same_as(r)))
      throw std::invalid_argument("eval_poly: value from a different presentation");
    values.push_back(it->second);
  }
  // Horner over the first variable, recursing on the coefficient polynomials.
  std::function<VirtualClass(const std::map<std::vector<int>, Int, GrlexDesc>&, std::size_t)> go =
      [&](const std::map<std::vector<int>, Int, GrlexDesc>& terms,
          std::size_t vi) -> VirtualClass {
    if (vi == values.size()) {
      Int c = 0;
      for (const auto& [e, cc] : terms) c += cc;  // all exponents exhausted
      return virtual_int(c, r);
    }
    // split by exponent of variable vi
    std::map<int, std::map<std::vector<int>, Int, GrlexDesc>> by_exp;
    for (const auto& [e, c] : terms) by_exp[e[vi]][e] = c;
    int max_e = by_exp.empty() ? 0 : by_exp.rbegin()->first;
    VirtualClass acc = virtual_int(0, r);
    for (int k = max_e; k >= 0; --k) {
      if (k != max_e) acc = virtual_mul(acc, VirtualClass{Int(0), values[vi]});
      auto it = by_exp.find(k);
      if (it != by_exp.end()) acc = virtual_add(acc, go(it->second, vi + 1));
    }
    return acc;
  };
  std::map<std::vector<int>, Int, GrlexDesc> terms = p.terms();
  return go(terms, 0);
}

inline RingElement eval_poly(const RingPresentation& r, const IntPolynomial& p,
                             const std::map<std::string, RingElement>& assignment) {
  if (p.has_constant_term())
    throw std::invalid_argument("eval_poly: constant term has no meaning without a unit");
  VirtualClass v = eval_poly_virtual(r, p, assignment);
  if (v.n != 0) throw std::logic_error("eval_poly: nonzero integer part");
  return v.t;
}

// Additive subgroup given by generating vectors, reduced in the ambient
// presentation.
struct SubmodulePresentation {
  std::vector<std::vector<Int>> generators;

  IntMatrix as_matrix(std::size_t width) const {
    IntMatrix m(0, width);
    for (const auto& v : generators) m.append_row(v);
    return m;
  }
};

inline bool submodule_is_zero(const RingPresentation& r, const SubmodulePresentation& s) {
  for (const auto& v : s.generators)
    if (!r.in_relation_lattice(v)) return false;
  return true;
}

// Membership of an element in span(S) + relations.
inline bool in_submodule(const RingElement& e, const SubmodulePresentation& s) {
  const RingPresentation& r = *e.ring;
  IntMatrix rows = s.as_matrix(r.num_generators());
  for (std::size_t i = 0; i < r.relation_rows().rows(); ++i)
    rows.append_row(r.relation_rows().row(i));
  IntMatrix h = hermite_row_basis(rows);
  std::vector<Int> red = hermite_reduce(e.coeff, h);
  for (const Int& x : red)
    if (x != 0) return false;
  return true;
}

// Generating set of the n-th power ideal R^n.
inline SubmodulePresentation ideal_power(const RingPresentation& r, int n) {
  if (n < 1) throw std::invalid_argument("ideal_power: n must be >= 1");
  const std::size_t g = r.num_generators();
  std::set<std::vector<Int>> current;
  for (std::size_t i = 0; i < g; ++i) {
    RingElement gi = ring_generator(r, i);
    if (!gi.is_zero()) current.insert(gi.coeff);
  }
  for (int step = 2; step <= n; ++step) {
    std::set<std::vector<Int>> next;
    for (const auto& v : current) {
      RingElement e{&r, v};
      for (std::size_t i = 0; i < g; ++i) {
        RingElement p = ring_mul(e, ring_generator(r, i));
        if (!p.is_zero()) next.insert(p.coeff);
      }
    }
    current = std::move(next);
  }
  SubmodulePresentation s;
  for (const auto& v : current) s.generators.push_back(v);
  return s;
}

// Least n >= 1 with R^{n+1} = 0; presentations are expected to be nilpotent
// and the search is cut off past num_generators + 1.
inline int nilpotency_index(const RingPresentation& r) {
  const int bound = static_cast<int>(r.num_generators()) + 1;
  for (int n = 0; n <= bound; ++n) {
    if (submodule_is_zero(r, ideal_power(r, n + 1))) return n;
  }
  throw NotNilpotentError("nilpotency_index: no vanishing power up to bound " +
                          std::to_string(bound + 1));
}

// Span of the generators with filtration level >= q.
inline SubmodulePresentation filtration_submodule(const RingPresentation& r, int q) {
  SubmodulePresentation s;
  const std::size_t g = r.num_generators();
  for (std::size_t i = 0; i < g; ++i) {
    if (r.filtration_levels()[i] >= q) {
      std::vector<Int> v(g, Int(0));
      v[i] = 1;
      s.generators.push_back(r.reduce(std::move(v)));
    }
  }
  return s;
}

// Witness c with e = M c modulo span(S) + relations, if one exists.
inline std::optional<RingElement> is_divisible(const RingElement& e, const Int& m,
                                               const SubmodulePresentation& s) {
  const RingPresentation& r = *e.ring;
  const std::size_t g = r.num_generators();
  IntMatrix a(g, g);
  for (std::size_t i = 0; i < g; ++i) a.at(i, i) = m;
  IntMatrix sub = s.as_matrix(g);
  for (std::size_t i = 0; i < r.relation_rows().rows(); ++i)
    sub.append_row(r.relation_rows().row(i));
  auto sol = solve_in_quotient(a, e.coeff, sub);
  if (!sol) return std::nullopt;
  return make_element(r, sol->x);
}

// Matrix of left multiplication by a in the generator basis, columns not yet
// reduced: column j is a * gen_j.
inline IntMatrix multiplication_endomorphism(const RingPresentation& r, const RingElement& a) {
  const std::size_t g = r.num_generators();
  IntMatrix m(g, g);
  for (std::size_t j = 0; j < g; ++j) {
    for (std::size_t i = 0; i < g; ++i) {
      if (a.coeff[i] == 0) continue;
      const std::vector<Int>& sc = r.product_of_generators(i, j);
      for (std::size_t t = 0; t < g; ++t)
        if (sc[t] != 0) m.at(t, j) += a.coeff[i] * sc[t];
    }
  }
  return m;
}

struct RingViolation {
  std::string axiom;
  std::string witness;
};

struct RingValidationReport {
  bool valid = true;
  std::vector<RingViolation> violations;

  void fail(const std::string& axiom, const std::string& witness) {
    valid = false;
    violations.push_back({axiom, witness});
  }
};

inline RingValidationReport validate(const RingPresentation& r) {
  RingValidationReport report;
  const std::size_t g = r.num_generators();

  for (std::size_t i = 0; i < g; ++i)
    if (r.filtration_levels()[i] < 1)
      report.fail("filtration-level-positive", "generator " + r.generator_names()[i]);

  // products respect the relations: relation * generator stays a relation
  for (std::size_t ri = 0; ri < r.relation_rows().rows(); ++ri) {
    std::vector<Int> row = r.relation_rows().row(ri);
    for (std::size_t k = 0; k < g; ++k) {
      std::vector<Int> prod(g, Int(0));
      for (std::size_t i = 0; i < g; ++i) {
        if (row[i] == 0) continue;
        const std::vector<Int>& sc = r.product_of_generators(i, k);
        for (std::size_t t = 0; t < g; ++t) prod[t] += row[i] * sc[t];
      }
      if (!r.in_relation_lattice(prod))
        report.fail("products-respect-relations",
                    "relation " + std::to_string(ri) + " times " + r.generator_names()[k]);
    }
  }

  // associativity on generator triples, after reduction
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t k = 0; k < g; ++k) {
        RingElement gi = ring_generator(r, i), gj = ring_generator(r, j),
                    gk = ring_generator(r, k);
        RingElement lhs = ring_mul(ring_mul(gi, gj), gk);
        RingElement rhs = ring_mul(gi, ring_mul(gj, gk));
        if (!(lhs == rhs))
          report.fail("associativity", "(" + r.generator_names()[i] + "," +
                                           r.generator_names()[j] + "," + r.generator_names()[k] +
                                           ")");
      }

  // filtration multiplicativity on structure constants
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      const std::vector<Int>& sc = r.product_of_generators(i, j);
      for (std::size_t t = 0; t < g; ++t) {
        if (sc[t] == 0) continue;
        if (r.filtration_levels()[t] < r.filtration_levels()[i] + r.filtration_levels()[j])
          report.fail("filtration-multiplicative",
                      r.generator_names()[i] + "*" + r.generator_names()[j] + " hits " +
                          r.generator_names()[t]);
      }
    }

  // nilpotency within the bound
  try {
    nilpotency_index(r);
  } catch (const NotNilpotentError& e) {
    report.fail("nilpotent", e.what());
  }

  return report;
}

}  // namespace oeclass
