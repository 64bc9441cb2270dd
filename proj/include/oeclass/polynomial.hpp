#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oeclass/int_types.hpp"

namespace oeclass {

struct PolyVar {
  std::string name;
  int weight = 1;  // weighted total degree uses this; plain degree ignores it

  bool operator==(const PolyVar& o) const { return name == o.name && weight == o.weight; }
};

// Strict order whose map iteration yields descending graded lex: higher total
// degree first, ties broken by larger exponent on the earliest variable. This
// is the canonical print and comparison order everywhere.
struct GrlexDesc {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    long da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da > db;
    return a > b;
  }
};

class IntegralityError : public std::runtime_error {
 public:
  explicit IntegralityError(const std::string& msg) : std::runtime_error(msg) {}
};

template <class C>
class Polynomial {
 public:
  using TermMap = std::map<std::vector<int>, C, GrlexDesc>;

  Polynomial() = default;
  explicit Polynomial(std::vector<PolyVar> vars) : vars_(std::move(vars)) {}

  static Polynomial zero(std::vector<PolyVar> vars) { return Polynomial(std::move(vars)); }

  static Polynomial constant(std::vector<PolyVar> vars, const C& c) {
    Polynomial p(std::move(vars));
    if (c != 0) p.terms_[std::vector<int>(p.vars_.size(), 0)] = c;
    return p;
  }

  static Polynomial variable(std::vector<PolyVar> vars, std::size_t idx) {
    Polynomial p(std::move(vars));
    if (idx >= p.vars_.size()) throw std::out_of_range("Polynomial::variable: bad index");
    std::vector<int> e(p.vars_.size(), 0);
    e[idx] = 1;
    p.terms_[e] = C(1);
    return p;
  }

  static Polynomial monomial(std::vector<PolyVar> vars, std::vector<int> exps, const C& c) {
    Polynomial p(std::move(vars));
    if (exps.size() != p.vars_.size()) throw std::invalid_argument("monomial: exponent width");
    if (c != 0) p.terms_[std::move(exps)] = c;
    return p;
  }

  const std::vector<PolyVar>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coeff_of(const std::vector<int>& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  C evaluate(const std::map<std::string, C>& values) const {
    std::vector<C> v(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = values.find(vars_[i].name);
      if (it == values.end())
        throw std::invalid_argument("evaluate: missing value for " + vars_[i].name);
      v[i] = it->second;
    }
    C total(0);
    for (const auto& [e, c] : terms_) {
      C t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) t = t * v[i];
      total += t;
    }
    return total;
  }

  // Accumulate one term, keeping the no-zero-coefficients invariant.
  void add_term(const std::vector<int>& e, const C& c) {
    if (c == 0) return;
    if (e.size() != vars_.size()) throw std::invalid_argument("add_term: exponent width");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool operator==(const Polynomial& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator+(const Polynomial& o) const {
    check_same_vars(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check_same_vars(o);
    Polynomial r(vars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        std::vector<int> e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Polynomial scaled(const C& k) const {
    Polynomial r(vars_);
    if (k == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * k;
    return r;
  }

  Polynomial pow(unsigned n) const {
    Polynomial r = constant(vars_, C(1));
    Polynomial b = *this;
    while (n > 0) {
      if (n & 1u) r = r * b;
      b = b * b;
      n >>= 1u;
    }
    return r;
  }

  long total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms_) {
      long t = 0;
      for (int x : e) t += x;
      if (t > d) d = t;
    }
    return d;
  }

  long min_total_degree() const {
    bool first = true;
    long d = 0;
    for (const auto& [e, c] : terms_) {
      long t = 0;
      for (int x : e) t += x;
      if (first || t < d) d = t;
      first = false;
    }
    if (first) throw std::domain_error("min_total_degree of zero polynomial");
    return d;
  }

  bool has_constant_term() const {
    for (const auto& [e, c] : terms_) {
      bool all0 = true;
      for (int x : e)
        if (x != 0) all0 = false;
      if (all0) return true;
    }
    return false;
  }

  // Keep the terms of exact weighted degree n.
  Polynomial weighted_truncate(long n) const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
      long w = 0;
      for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<long>(e[i]) * vars_[i].weight;
      if (w == n) r.terms_[e] = c;
    }
    return r;
  }

  // Substitute a constant for one variable; the variable leaves the list.
  Polynomial substitute(const std::string& name, const C& value) const {
    std::size_t idx = var_index(name);
    std::vector<PolyVar> nv;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (i != idx) nv.push_back(vars_[i]);
    Polynomial r(nv);
    for (const auto& [e, c] : terms_) {
      C nc = c;
      for (int k = 0; k < e[idx]; ++k) nc = nc * value;
      std::vector<int> ne;
      ne.reserve(e.size() - 1);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != idx) ne.push_back(e[i]);
      r.add_term(ne, nc);
    }
    return r;
  }

  // Substitute polynomials (over a common target variable list) for variables.
  // Unmapped variables must exist in the target list by name and pass through.
  Polynomial compose(const std::vector<PolyVar>& target_vars,
                     const std::map<std::string, Polynomial>& images) const {
    std::vector<Polynomial> image_of(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = images.find(vars_[i].name);
      if (it != images.end()) {
        if (!(it->second.vars() == target_vars))
          throw std::invalid_argument("compose: image over wrong variable list");
        image_of[i] = it->second;
      } else {
        std::size_t j = 0;
        while (j < target_vars.size() && target_vars[j].name != vars_[i].name) ++j;
        if (j == target_vars.size())
          throw std::invalid_argument("compose: unmapped variable " + vars_[i].name);
        image_of[i] = variable(target_vars, j);
      }
    }
    Polynomial r = zero(target_vars);
    for (const auto& [e, c] : terms_) {
      Polynomial t = constant(target_vars, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) t = t * image_of[i].pow(static_cast<unsigned>(e[i]));
      r = r + t;
    }
    return r;
  }

  // Divide every term by the given monomial; throws if any term lacks it.
  Polynomial exact_divide_monomial(const std::vector<int>& mono) const {
    if (mono.size() != vars_.size()) throw std::invalid_argument("exact_divide_monomial: width");
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
      std::vector<int> ne(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        ne[i] = e[i] - mono[i];
        if (ne[i] < 0)
          throw IntegralityError("exact_divide_monomial: term not divisible");
      }
      r.terms_[ne] = c;
    }
    return r;
  }

  Polynomial exact_divide_scalar(const C& k) const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = divide_coeff(c, k);
    return r;
  }

  std::string pretty() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      os << format_term(e, c, first);
      first = false;
    }
    return os.str();
  }

 private:
  std::vector<PolyVar> vars_;
  TermMap terms_;

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    throw std::invalid_argument("Polynomial: unknown variable " + name);
  }

  void check_same_vars(const Polynomial& o) const {
    if (!(vars_ == o.vars_)) throw std::invalid_argument("Polynomial: variable list mismatch");
  }

  static Int divide_coeff(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b != a) throw IntegralityError("exact_divide_scalar: coefficient not divisible");
    return q;
  }
  static Rat divide_coeff(const Rat& a, const Rat& b) { return a / b; }

  std::string format_term(const std::vector<int>& e, const C& c, bool first) const {
    std::ostringstream os;
    bool neg = c < 0;
    C mag = neg ? C(-c) : c;
    if (neg)
      os << "-";
    else if (!first)
      os << "+";
    bool all0 = true;
    for (int x : e)
      if (x != 0) all0 = false;
    if (all0 || mag != 1) os << coeff_str(mag);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << vars_[i].name;
      if (e[i] > 1) os << "^" << e[i];
    }
    return os.str();
  }

  static std::string coeff_str(const Int& c) { return c.str(); }
  static std::string coeff_str(const Rat& c) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(c).str();
    if (boost::multiprecision::denominator(c) != 1)
      os << "/" << boost::multiprecision::denominator(c).str();
    return os.str();
  }
};

using IntPolynomial = Polynomial<Int>;
using RationalPolynomial = Polynomial<Rat>;

inline RationalPolynomial to_rational(const IntPolynomial& p) {
  RationalPolynomial r(p.vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, Rat(c));
  return r;
}

// Integral part check: every coefficient must be an integer.
inline IntPolynomial to_integer(const RationalPolynomial& p) {
  IntPolynomial r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (boost::multiprecision::denominator(c) != 1)
      throw IntegralityError("to_integer: non-integral coefficient " +
                             boost::multiprecision::numerator(c).str() + "/" +
                             boost::multiprecision::denominator(c).str());
    r.add_term(e, Int(boost::multiprecision::numerator(c)));
  }
  return r;
}

// Print grouped by the monomials in the variables other than `param`: each
// group's coefficient is a polynomial in `param` alone, parenthesized when it
// has several terms. Groups follow the canonical order of their monomials.
inline std::string pretty_grouped(const IntPolynomial& p, const std::string& param) {
  const auto& vars = p.vars();
  std::size_t pidx = vars.size();
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == param) pidx = i;
  if (pidx == vars.size()) throw std::invalid_argument("pretty_grouped: unknown parameter");
  if (p.is_zero()) return "0";

  std::vector<PolyVar> outer_vars, param_vars{vars[pidx]};
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (i != pidx) outer_vars.push_back(vars[i]);

  std::map<std::vector<int>, IntPolynomial, GrlexDesc> groups;
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> outer;
    outer.reserve(e.size() - 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != pidx) outer.push_back(e[i]);
    auto it = groups.find(outer);
    if (it == groups.end()) it = groups.emplace(outer, IntPolynomial(param_vars)).first;
    it->second = it->second + IntPolynomial::monomial(param_vars, {e[pidx]}, c);
  }

  std::ostringstream os;
  bool first = true;
  for (const auto& [outer, coeff] : groups) {
    bool multi = coeff.terms().size() > 1;
    // Sign comes from the leading coefficient so "-(3m^2-6m)x" reads naturally.
    Int lead = coeff.terms().begin()->second;
    bool neg = lead < 0;
    IntPolynomial shown = neg ? -coeff : coeff;
    if (neg)
      os << "-";
    else if (!first)
      os << "+";
    bool all0 = true;
    for (int x : outer)
      if (x != 0) all0 = false;
    std::string cs = shown.pretty();
    if (multi) {
      os << "(" << cs << ")";
    } else if (cs != "1" || all0) {
      os << cs;
    }
    for (std::size_t i = 0; i < outer.size(); ++i) {
      if (outer[i] == 0) continue;
      os << outer_vars[i].name;
      if (outer[i] > 1) os << "^" << outer[i];
    }
    first = false;
  }
  return os.str();
}

}  // namespace oeclass
