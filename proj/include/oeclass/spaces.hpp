#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oeclass/cohomology.hpp"
#include "oeclass/int_types.hpp"
#include "oeclass/invariants.hpp"
#include "oeclass/ringcore.hpp"

namespace oeclass {

using Json = nlohmann::ordered_json;

// A space as the decision procedures see it: its reduced K-ring with the
// skeleton filtration, optional dimension and cohomology data, the s-classes
// of the K-generators, and the user's torsion-freeness assertions.
struct SpaceModel {
  std::string name;
  RingPresentation kring;
  std::optional<int> dim;
  std::optional<CohomologyRing> cohomology;
  // schern[i][k]: coordinates of s_k(generator i) over the degree-2k part
  std::map<std::size_t, std::map<int, std::vector<Int>>> schern;
  // values of m for which H* is asserted m-torsion-free; 0 asserts all m
  std::vector<Int> torsion_assertions;

  bool operator==(const SpaceModel& o) const {
    bool coh_equal = cohomology.has_value() == o.cohomology.has_value() &&
                     (!cohomology.has_value() ||
                      (cohomology->ring.same_as(o.cohomology->ring) &&
                       cohomology->dim_bound == o.cohomology->dim_bound));
    return name == o.name && kring.same_as(o.kring) && dim == o.dim && coh_equal &&
           schern == o.schern && torsion_assertions == o.torsion_assertions;
  }
  bool operator!=(const SpaceModel& o) const { return !(*this == o); }
};

inline bool asserts_torsion_free(const SpaceModel& x, const Int& m) {
  for (const Int& v : x.torsion_assertions)
    if (v == 0 || v == m) return true;
  return false;
}

// s-classes of a reduced class, additively from the generator table.
inline std::vector<CohomologyClass> bundle_s_classes(const SpaceModel& x,
                                                     const RingElement& reduced, int up_to) {
  if (!x.cohomology)
    throw std::invalid_argument("bundle_s_classes: space carries no cohomology");
  const CohomologyRing& h = *x.cohomology;
  std::vector<CohomologyClass> out;
  for (int k = 1; k <= up_to; ++k) {
    RingElement acc = ring_zero(h.ring);
    for (std::size_t i = 0; i < x.kring.num_generators(); ++i) {
      if (reduced.coeff[i] == 0) continue;
      auto git = x.schern.find(i);
      if (git == x.schern.end()) continue;
      auto kit = git->second.find(k);
      if (kit == git->second.end()) continue;
      acc = ring_add(acc, ring_scalar_mul(reduced.coeff[i],
                                          cohomology_class(h, k, kit->second).element));
    }
    out.push_back({2 * k, acc});
  }
  return out;
}

// Consistency of the s-class table with the ring structure: on rank-0 classes
// the product rule has no rank terms, so for generators
// s_k(g_i g_j) = sum over a+b=k, a,b >= 1 of C(k,a) s_a(g_i) s_b(g_j).
struct SpaceViolation {
  std::string rule;
  std::string witness;
};

inline std::vector<SpaceViolation> validate_space(const SpaceModel& x) {
  std::vector<SpaceViolation> out;
  RingValidationReport ring_report = validate(x.kring);
  for (const RingViolation& v : ring_report.violations)
    out.push_back({"kring: " + v.axiom, v.witness});
  if (x.dim) {
    if (*x.dim < 0) out.push_back({"dim-nonnegative", std::to_string(*x.dim)});
    int half = *x.dim / 2;
    for (std::size_t i = 0; i < x.kring.num_generators(); ++i)
      if (x.kring.filtration_levels()[i] > half)
        out.push_back({"filtration-beyond-dim", x.kring.generator_names()[i]});
  }
  if (x.cohomology) {
    for (const CohomologyViolation& v : validate_cohomology(*x.cohomology))
      out.push_back({"cohomology: " + v.rule, v.witness});
    if (x.dim && x.cohomology->dim_bound != *x.dim)
      out.push_back({"cohomology-dim-mismatch", std::to_string(x.cohomology->dim_bound)});

    const CohomologyRing& h = *x.cohomology;
    int top = h.dim_bound / 2;
    auto s_of = [&](std::size_t i, int k) -> RingElement {
      auto git = x.schern.find(i);
      if (git != x.schern.end()) {
        auto kit = git->second.find(k);
        if (kit != git->second.end()) return cohomology_class(h, k, kit->second).element;
      }
      return ring_zero(h.ring);
    };
    const std::size_t g = x.kring.num_generators();
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i; j < g; ++j) {
        const std::vector<Int>& prod = x.kring.product_of_generators(i, j);
        for (int k = 1; k <= top; ++k) {
          RingElement lhs = ring_zero(h.ring);
          for (std::size_t t = 0; t < g; ++t)
            if (prod[t] != 0) lhs = ring_add(lhs, ring_scalar_mul(prod[t], s_of(t, k)));
          RingElement rhs = ring_zero(h.ring);
          for (int a = 1; a < k; ++a)
            rhs = ring_add(rhs, ring_scalar_mul(binomial(Int(k), static_cast<unsigned>(a)),
                                                ring_mul(s_of(i, a), s_of(j, k - a))));
          if (!(lhs == rhs))
            out.push_back({"schern-product-rule",
                           x.kring.generator_names()[i] + "*" + x.kring.generator_names()[j] +
                               " at s_" + std::to_string(k)});
        }
      }
  } else if (!x.schern.empty()) {
    out.push_back({"schern-without-cohomology", ""});
  }
  return out;
}

// ---------------------------------------------------------------------------
// builtins

inline SpaceModel builtin_point() {
  SpaceModel x;
  x.name = "point";
  x.kring = RingPresentation({}, {}, {}, {});
  x.dim = 0;
  x.cohomology = CohomologyRing{RingPresentation({}, {}, {}, {}), 0};
  x.torsion_assertions = {Int(0)};
  return x;
}

inline SpaceModel builtin_cp(int n) {
  if (n < 1) throw std::invalid_argument("cp(n): n must be >= 1");
  std::vector<std::string> names;
  std::vector<Int> orders(static_cast<std::size_t>(n), Int(0));
  std::vector<int> levels;
  for (int i = 1; i <= n; ++i) {
    names.push_back(i == 1 ? "x" : "x^" + std::to_string(i));
    levels.push_back(i);
  }
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Int>> products;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      std::vector<Int> v(static_cast<std::size_t>(n), Int(0));
      if (i + j <= n) v[static_cast<std::size_t>(i + j - 1)] = 1;
      products[{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)}] = v;
    }

  SpaceModel x;
  x.name = "cp(" + std::to_string(n) + ")";
  x.kring = RingPresentation(names, orders, levels, products);
  x.dim = 2 * n;

  std::vector<std::string> hnames;
  for (int i = 1; i <= n; ++i) hnames.push_back(i == 1 ? "t" : "t^" + std::to_string(i));
  x.cohomology = CohomologyRing{RingPresentation(hnames, orders, levels, products), 2 * n};

  for (int i = 1; i <= n; ++i)
    for (int k = i; k <= n; ++k) {
      Int c = factorial(static_cast<unsigned>(i)) *
              stirling2(static_cast<unsigned>(k), static_cast<unsigned>(i));
      if (c != 0) x.schern[static_cast<std::size_t>(i - 1)][k] = {c};
    }
  x.torsion_assertions = {Int(0)};
  return x;
}

inline SpaceModel builtin_rp2() {
  SpaceModel x;
  x.name = "rp2";
  x.kring = RingPresentation({"z"}, {Int(2)}, {1}, {{{0, 0}, {Int(0)}}});
  x.dim = 2;
  x.cohomology = CohomologyRing{RingPresentation({"w"}, {Int(2)}, {1}, {{{0, 0}, {Int(0)}}}), 2};
  x.schern[0][1] = {Int(1)};
  x.torsion_assertions = {Int(1), Int(3), Int(5)};
  return x;
}

inline SpaceModel builtin_sphere(int d) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("sphere(d): d must be even and >= 2");
  int k = d / 2;
  SpaceModel x;
  x.name = "sphere(" + std::to_string(d) + ")";
  x.kring = RingPresentation({"y"}, {Int(0)}, {k}, {{{0, 0}, {Int(0)}}});
  x.dim = d;
  x.cohomology = CohomologyRing{RingPresentation({"t"}, {Int(0)}, {k}, {{{0, 0}, {Int(0)}}}), d};
  x.schern[0][k] = {factorial(static_cast<unsigned>(k))};
  x.torsion_assertions = {Int(0)};
  return x;
}

inline SpaceModel builtin_suspension(const std::vector<Int>& orders) {
  SpaceModel x;
  std::string group;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i > 0) group += "+";
    group += orders[i] == 0 ? "Z" : "Z/" + orders[i].str();
  }
  x.name = "suspension(" + group + ")";
  std::vector<std::string> names;
  std::vector<int> levels(orders.size(), 1);
  for (std::size_t i = 0; i < orders.size(); ++i) names.push_back("y" + std::to_string(i + 1));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Int>> products;
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = i; j < orders.size(); ++j)
      products[{i, j}] = std::vector<Int>(orders.size(), Int(0));
  x.kring = RingPresentation(names, orders, levels, products);
  return x;
}

inline SpaceModel builtin_wedge(const SpaceModel& a, const SpaceModel& b) {
  const std::size_t ga = a.kring.num_generators();
  const std::size_t gb = b.kring.num_generators();

  std::vector<std::string> names = a.kring.generator_names();
  for (const std::string& nm : b.kring.generator_names()) {
    for (const std::string& existing : names)
      if (existing == nm)
        throw std::invalid_argument("wedge: generator name collision: " + nm);
    names.push_back(nm);
  }
  std::vector<Int> orders = a.kring.torsion_orders();
  orders.insert(orders.end(), b.kring.torsion_orders().begin(), b.kring.torsion_orders().end());
  std::vector<int> levels = a.kring.filtration_levels();
  levels.insert(levels.end(), b.kring.filtration_levels().begin(),
                b.kring.filtration_levels().end());

  auto combine_products = [](const RingPresentation& ra, const RingPresentation& rb) {
    const std::size_t na = ra.num_generators(), nb = rb.num_generators();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Int>> products;
    for (std::size_t i = 0; i < na + nb; ++i)
      for (std::size_t j = i; j < na + nb; ++j) {
        std::vector<Int> v(na + nb, Int(0));
        if (i < na && j < na) {
          const std::vector<Int>& p = ra.product_of_generators(i, j);
          for (std::size_t t = 0; t < na; ++t) v[t] = p[t];
        } else if (i >= na && j >= na) {
          const std::vector<Int>& p = rb.product_of_generators(i - na, j - na);
          for (std::size_t t = 0; t < nb; ++t) v[na + t] = p[t];
        }
        products[{i, j}] = v;
      }
    return products;
  };

  SpaceModel x;
  x.name = "wedge(" + a.name + "," + b.name + ")";
  x.kring = RingPresentation(names, orders, levels, combine_products(a.kring, b.kring));
  if (a.dim && b.dim) x.dim = std::max(*a.dim, *b.dim);

  if (a.cohomology && b.cohomology) {
    const RingPresentation& ha = a.cohomology->ring;
    const RingPresentation& hb = b.cohomology->ring;
    // cohomology names are for display only, so collisions get primed
    std::vector<std::string> hnames = ha.generator_names();
    for (std::string nm : hb.generator_names()) {
      auto taken = [&](const std::string& c) {
        for (const std::string& existing : hnames)
          if (existing == c) return true;
        return false;
      };
      while (taken(nm)) nm += "'";
      hnames.push_back(nm);
    }
    std::vector<Int> horders = ha.torsion_orders();
    horders.insert(horders.end(), hb.torsion_orders().begin(), hb.torsion_orders().end());
    std::vector<int> hlevels = ha.filtration_levels();
    hlevels.insert(hlevels.end(), hb.filtration_levels().begin(), hb.filtration_levels().end());
    int bound = std::max(a.cohomology->dim_bound, b.cohomology->dim_bound);
    x.cohomology =
        CohomologyRing{RingPresentation(hnames, horders, hlevels, combine_products(ha, hb)),
                       bound};

    // s-class coordinates widen to the combined degree components
    auto widen = [&](const SpaceModel& src, std::size_t gen_offset, bool is_left) {
      for (const auto& [i, table] : src.schern) {
        for (const auto& [k, coords] : table) {
          std::size_t left_count = degree_positions(CohomologyRing{ha, bound}, k).size();
          std::size_t right_count = degree_positions(CohomologyRing{hb, bound}, k).size();
          std::vector<Int> wide(left_count + right_count, Int(0));
          for (std::size_t t = 0; t < coords.size(); ++t)
            wide[is_left ? t : left_count + t] = coords[t];
          x.schern[gen_offset + i][k] = wide;
        }
      }
    };
    widen(a, 0, true);
    widen(b, ga, false);
  }

  bool a_wild = false, b_wild = false;
  for (const Int& v : a.torsion_assertions) a_wild = a_wild || v == 0;
  for (const Int& v : b.torsion_assertions) b_wild = b_wild || v == 0;
  if (a_wild && b_wild) {
    x.torsion_assertions = {Int(0)};
  } else if (a_wild) {
    x.torsion_assertions = b.torsion_assertions;
  } else if (b_wild) {
    x.torsion_assertions = a.torsion_assertions;
  } else {
    for (const Int& v : a.torsion_assertions)
      for (const Int& w : b.torsion_assertions)
        if (v == w) x.torsion_assertions.push_back(v);
  }
  (void)gb;
  return x;
}

// ---------------------------------------------------------------------------
// builtin name parser: point | rp2 | cp(n) | cpN | sphere(2k) |
// wedge(A,B) | suspension(Z+Z/3+...)

namespace detail {

inline std::vector<Int> parse_group_orders(const std::string& s) {
  std::vector<Int> orders;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find('+', pos);
    std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
    if (term == "Z") {
      orders.push_back(Int(0));
    } else if (term.rfind("Z/", 0) == 0 && term.size() > 2) {
      orders.push_back(Int(term.substr(2)));
      if (orders.back() < 2)
        throw std::invalid_argument("suspension: cyclic order must be >= 2 in " + term);
    } else {
      throw std::invalid_argument("suspension: cannot parse group term '" + term + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (orders.empty()) throw std::invalid_argument("suspension: empty group");
  return orders;
}

// splits "A,B" at the top-level comma
inline std::pair<std::string, std::string> split_wedge_args(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw std::invalid_argument("wedge: expected two comma-separated spaces");
}

}  // namespace detail

inline SpaceModel builtin(const std::string& name) {
  auto arg_of = [&](const char* head) -> std::optional<std::string> {
    std::string h = std::string(head) + "(";
    if (name.rfind(h, 0) == 0 && name.size() > h.size() && name.back() == ')')
      return name.substr(h.size(), name.size() - h.size() - 1);
    return std::nullopt;
  };
  if (name == "point") return builtin_point();
  if (name == "rp2") return builtin_rp2();
  if (auto a = arg_of("cp")) return builtin_cp(std::stoi(*a));
  if (name.rfind("cp", 0) == 0 && name.size() > 2)
    return builtin_cp(std::stoi(name.substr(2)));
  if (auto a = arg_of("sphere")) return builtin_sphere(std::stoi(*a));
  if (auto a = arg_of("suspension")) return builtin_suspension(detail::parse_group_orders(*a));
  if (auto a = arg_of("wedge")) {
    auto [left, right] = detail::split_wedge_args(*a);
    return builtin_wedge(builtin(left), builtin(right));
  }
  throw std::invalid_argument("unknown builtin space: " + name);
}

// ---------------------------------------------------------------------------
// JSON schema

namespace detail {

inline Json int_to_json(const Int& v) {
  static const Int lo = -(Int(1) << 53), hi = Int(1) << 53;
  if (v > lo && v < hi) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected integer (number or decimal string) at " + where);
}

inline Json int_vector_to_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

inline std::vector<Int> int_vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument("expected array at " + where);
  std::vector<Int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(int_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json ring_to_json(const RingPresentation& r) {
  Json out;
  Json gens = Json::array();
  for (std::size_t i = 0; i < r.num_generators(); ++i) {
    Json g;
    g["name"] = r.generator_names()[i];
    g["order"] = int_to_json(r.torsion_orders()[i]);
    g["level"] = r.filtration_levels()[i];
    gens.push_back(g);
  }
  out["generators"] = gens;
  Json products = Json::object();
  for (std::size_t i = 0; i < r.num_generators(); ++i)
    for (std::size_t j = i; j < r.num_generators(); ++j)
      products[r.generator_names()[i] + "*" + r.generator_names()[j]] =
          int_vector_to_json(r.product_of_generators(i, j));
  out["products"] = products;
  if (r.extra_relations().rows() > 0) {
    Json rel = Json::array();
    for (std::size_t i = 0; i < r.extra_relations().rows(); ++i)
      rel.push_back(int_vector_to_json(r.extra_relations().row(i)));
    out["relations"] = rel;
  }
  return out;
}

inline RingPresentation ring_from_json(const Json& j, const std::string& where) {
  if (!j.contains("generators"))
    throw std::invalid_argument(where + ": missing required field 'generators'");
  std::vector<std::string> names;
  std::vector<Int> orders;
  std::vector<int> levels;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < j["generators"].size(); ++i) {
    const Json& g = j["generators"][i];
    std::string gw = where + ".generators[" + std::to_string(i) + "]";
    for (const char* field : {"name", "order", "level"})
      if (!g.contains(field))
        throw std::invalid_argument(gw + ": missing required field '" + field + "'");
    names.push_back(g["name"].get<std::string>());
    orders.push_back(int_from_json(g["order"], gw + ".order"));
    levels.push_back(g["level"].get<int>());
    if (index.count(names.back()))
      throw std::invalid_argument(gw + ": duplicate generator name " + names.back());
    index[names.back()] = i;
  }
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Int>> products;
  if (j.contains("products")) {
    for (const auto& [key, value] : j["products"].items()) {
      std::size_t star = key.find('*');
      if (star == std::string::npos)
        throw std::invalid_argument(where + ".products: key '" + key + "' lacks '*'");
      std::string a = key.substr(0, star), b = key.substr(star + 1);
      if (!index.count(a) || !index.count(b))
        throw std::invalid_argument(where + ".products: unknown generator in key '" + key + "'");
      std::size_t i = index[a], t = index[b];
      if (i > t) std::swap(i, t);
      std::vector<Int> v = int_vector_from_json(value, where + ".products." + key);
      if (v.size() != names.size())
        throw std::invalid_argument(where + ".products." + key + ": wrong vector length");
      products[{i, t}] = v;
    }
  }
  IntMatrix extra;
  if (j.contains("relations")) {
    for (std::size_t i = 0; i < j["relations"].size(); ++i) {
      std::vector<Int> row = int_vector_from_json(
          j["relations"][i], where + ".relations[" + std::to_string(i) + "]");
      if (row.size() != names.size())
        throw std::invalid_argument(where + ".relations: wrong row length");
      extra.append_row(row);
    }
  }
  return RingPresentation(names, orders, levels, products, extra);
}

}  // namespace detail

inline Json save(const SpaceModel& x) {
  Json out;
  out["name"] = x.name;
  if (x.dim) out["dim"] = *x.dim;
  Json kr = detail::ring_to_json(x.kring);
  out["generators"] = kr["generators"];
  out["products"] = kr["products"];
  if (kr.contains("relations")) out["relations"] = kr["relations"];
  if (x.cohomology) {
    Json h = detail::ring_to_json(x.cohomology->ring);
    h["dim_bound"] = x.cohomology->dim_bound;
    out["cohomology"] = h;
  }
  if (!x.schern.empty()) {
    Json sc = Json::object();
    for (const auto& [i, table] : x.schern) {
      Json row = Json::object();
      for (const auto& [k, coords] : table)
        row[std::to_string(k)] = detail::int_vector_to_json(coords);
      sc[x.kring.generator_names()[i]] = row;
    }
    out["schern"] = sc;
  }
  out["torsion_assertions"] = detail::int_vector_to_json(x.torsion_assertions);
  return out;
}

inline std::string save_to_string(const SpaceModel& x) { return save(x).dump(2) + "\n"; }

// Parse without the validation pass; structural errors in the JSON still
// throw. Callers that want a violation report run validate_space themselves.
inline SpaceModel load_raw(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("space document: expected a JSON object");
  if (!j.contains("name"))
    throw std::invalid_argument("space document: missing required field 'name'");
  SpaceModel x;
  x.name = j["name"].get<std::string>();
  if (j.contains("dim")) x.dim = j["dim"].get<int>();
  x.kring = detail::ring_from_json(j, "space");
  if (j.contains("cohomology")) {
    const Json& h = j["cohomology"];
    if (!h.contains("dim_bound"))
      throw std::invalid_argument("space.cohomology: missing required field 'dim_bound'");
    x.cohomology =
        CohomologyRing{detail::ring_from_json(h, "space.cohomology"), h["dim_bound"].get<int>()};
  }
  if (j.contains("schern")) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < x.kring.num_generators(); ++i)
      index[x.kring.generator_names()[i]] = i;
    for (const auto& [gname, table] : j["schern"].items()) {
      if (!index.count(gname))
        throw std::invalid_argument("space.schern: unknown generator " + gname);
      for (const auto& [kstr, coords] : table.items())
        x.schern[index[gname]][std::stoi(kstr)] =
            detail::int_vector_from_json(coords, "space.schern." + gname + "." + kstr);
    }
  }
  if (j.contains("torsion_assertions"))
    x.torsion_assertions =
        detail::int_vector_from_json(j["torsion_assertions"], "space.torsion_assertions");
  return x;
}

inline SpaceModel load(const Json& j) {
  SpaceModel x = load_raw(j);
  std::vector<SpaceViolation> violations = validate_space(x);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "space document fails validation:";
    for (const SpaceViolation& v : violations) msg << "\n  " << v.rule << " [" << v.witness << "]";
    throw std::runtime_error(msg.str());
  }
  return x;
}

class FileOpenError : public std::runtime_error {
 public:
  explicit FileOpenError(const std::string& msg) : std::runtime_error(msg) {}
};

inline SpaceModel load_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("space document: ") + e.what());
  }
  return load(j);
}

inline SpaceModel load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileOpenError("cannot open space file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_from_string(buf.str());
}

// Space argument that is either a builtin name or a path to a JSON document.
inline SpaceModel resolve_space(const std::string& arg) {
  try {
    return builtin(arg);
  } catch (const std::invalid_argument&) {
    if (arg.find('.') == std::string::npos && arg.find('/') == std::string::npos) throw;
  }
  return load_file(arg);
}

// bundle JSON form: {"rank": r, "reduced": [...]}
inline Json bundle_to_json(const BundleClass& e) {
  Json out;
  out["rank"] = detail::int_to_json(e.rank);
  out["reduced"] = detail::int_vector_to_json(e.reduced.coeff);
  return out;
}

inline BundleClass bundle_from_json(const SpaceModel& x, const Json& j) {
  for (const char* field : {"rank", "reduced"})
    if (!j.contains(field))
      throw std::invalid_argument(std::string("bundle: missing required field '") + field + "'");
  Int rank = detail::int_from_json(j["rank"], "bundle.rank");
  std::vector<Int> coords = detail::int_vector_from_json(j["reduced"], "bundle.reduced");
  if (coords.size() != x.kring.num_generators())
    throw std::invalid_argument("bundle.reduced: wrong coordinate count");
  return make_bundle(rank, make_element(x.kring, coords));
}

}  // namespace oeclass
