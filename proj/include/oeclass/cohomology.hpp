#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "oeclass/equivrel.hpp"
#include "oeclass/int_linalg.hpp"
#include "oeclass/int_types.hpp"
#include "oeclass/ringcore.hpp"

namespace oeclass {

// Even-degree cohomology with cup products, presented as a graded ring whose
// generator levels are half-degrees: a level-k generator spans part of degree
// 2k. Products are exactly degree-additive and vanish above dim_bound.
struct CohomologyRing {
  RingPresentation ring;
  int dim_bound = 0;  // CW dimension; degrees 2k with 2k <= dim_bound carry classes
};

// Homogeneous class in degree 2k, stored in the ambient ring.
struct CohomologyClass {
  int degree = 0;  // even, = 2k
  RingElement element;

  bool operator==(const CohomologyClass& o) const {
    return degree == o.degree && element == o.element;
  }
  bool operator!=(const CohomologyClass& o) const { return !(*this == o); }
};

inline std::vector<std::size_t> degree_positions(const CohomologyRing& h, int k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h.ring.num_generators(); ++i)
    if (h.ring.filtration_levels()[i] == k) out.push_back(i);
  return out;
}

inline CohomologyClass cohomology_zero(const CohomologyRing& h, int k) {
  return {2 * k, ring_zero(h.ring)};
}

inline bool is_homogeneous(const CohomologyRing& h, int k, const RingElement& e) {
  for (std::size_t i = 0; i < h.ring.num_generators(); ++i)
    if (e.coeff[i] != 0 && h.ring.filtration_levels()[i] != k) return false;
  return true;
}

// Class from coordinates over the degree-2k generators.
inline CohomologyClass cohomology_class(const CohomologyRing& h, int k,
                                        const std::vector<Int>& coords) {
  std::vector<std::size_t> pos = degree_positions(h, k);
  if (coords.size() != pos.size())
    throw std::invalid_argument("cohomology_class: coordinate count mismatch in degree " +
                                std::to_string(2 * k));
  std::vector<Int> full(h.ring.num_generators(), Int(0));
  for (std::size_t j = 0; j < pos.size(); ++j) full[pos[j]] = coords[j];
  CohomologyClass c{2 * k, make_element(h.ring, full)};
  if (!is_homogeneous(h, k, c.element))
    throw std::logic_error("cohomology_class: reduction left the degree");
  return c;
}

inline std::vector<Int> degree_coordinates(const CohomologyRing& h, const CohomologyClass& c) {
  int k = c.degree / 2;
  if (!is_homogeneous(h, k, c.element))
    throw std::invalid_argument("degree_coordinates: class is not homogeneous");
  std::vector<Int> out;
  for (std::size_t i : degree_positions(h, k)) out.push_back(c.element.coeff[i]);
  return out;
}

// The abelian group H^{2k}, on the degree-2k generators.
inline AbelianGroupPresentation degree_group(const CohomologyRing& h, int k) {
  return level_quotient(h.ring, k).quotient;
}

inline CohomologyClass cup(const CohomologyRing& h, const CohomologyClass& a,
                           const CohomologyClass& b) {
  return {a.degree + b.degree, ring_mul(a.element, b.element)};
}

inline CohomologyClass cohomology_add(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.degree != b.degree)
    throw std::invalid_argument("cohomology_add: mixed degrees");
  return {a.degree, ring_add(a.element, b.element)};
}

inline CohomologyClass cohomology_sub(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.degree != b.degree)
    throw std::invalid_argument("cohomology_sub: mixed degrees");
  return {a.degree, ring_sub(a.element, b.element)};
}

inline CohomologyClass cohomology_scalar_mul(const Int& c, const CohomologyClass& a) {
  return {a.degree, ring_scalar_mul(c, a.element)};
}

// Structural checks beyond the ring axioms: exact grading and vanishing above
// the dimension bound.
struct CohomologyViolation {
  std::string rule;
  std::string witness;
};

inline std::vector<CohomologyViolation> validate_cohomology(const CohomologyRing& h) {
  std::vector<CohomologyViolation> out;
  RingValidationReport ring_report = validate(h.ring);
  for (const RingViolation& v : ring_report.violations)
    out.push_back({"ring: " + v.axiom, v.witness});
  if (h.dim_bound < 0) out.push_back({"dim-bound-nonnegative", std::to_string(h.dim_bound)});
  const std::size_t g = h.ring.num_generators();
  for (std::size_t i = 0; i < g; ++i) {
    int ki = h.ring.filtration_levels()[i];
    if (2 * ki > h.dim_bound)
      out.push_back({"generator-above-dim", h.ring.generator_names()[i]});
    for (std::size_t j = i; j < g; ++j) {
      int kj = h.ring.filtration_levels()[j];
      const std::vector<Int>& prod = h.ring.product_of_generators(i, j);
      for (std::size_t t = 0; t < g; ++t) {
        if (prod.empty() || prod[t] == 0) continue;
        if (h.ring.filtration_levels()[t] != ki + kj)
          out.push_back({"product-not-graded", h.ring.generator_names()[i] + "*" +
                                                   h.ring.generator_names()[j]});
        if (2 * (ki + kj) > h.dim_bound)
          out.push_back({"product-above-dim", h.ring.generator_names()[i] + "*" +
                                                  h.ring.generator_names()[j]});
      }
    }
  }
  return out;
}

}  // namespace oeclass
