#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oeclass/int_types.hpp"

namespace oeclass {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix();
    std::size_t c = rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("IntMatrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  std::vector<Int> row(std::size_t r) const {
    std::vector<Int> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = at(r, j);
    return out;
  }

  std::vector<Int> col(std::size_t c) const {
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, c);
    return out;
  }

  void append_row(const std::vector<Int>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: row width mismatch");
    e_.insert(e_.end(), r.begin(), r.end());
    ++rows_;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix mul(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix: size mismatch in mul");
    IntMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < other.cols_; ++j) r.at(i, j) += a * other.at(k, j);
      }
    return r;
  }

  std::vector<Int> mul_vec(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix: size mismatch in mul_vec");
    std::vector<Int> r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const Int& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) at(a, j) += k * at(b, j);
  }
  // col a += k * col b
  void add_col(std::size_t a, std::size_t b, const Int& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) at(i, a) += k * at(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) at(a, j) = -at(a, j);
  }
  void negate_col(std::size_t a) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, a) = -at(i, a);
  }

  bool is_zero() const {
    for (const Int& x : e_) {
      if (x != 0) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank, d_i > 0.
struct SnfDecomposition {
  IntMatrix U, D, V;
  std::size_t rank = 0;
  std::vector<Int> invariant_factors;
};

namespace detail {

// Pivot choice: smallest nonzero absolute value in the trailing block, ties by
// lowest (row, col) in scan order. Deterministic, so golden outputs are stable.
inline bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Int& x = d.at(i, j);
      if (x == 0) continue;
      Int a = abs_int(x);
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace detail

inline SnfDecomposition smith_normal_form(const IntMatrix& a) {
  SnfDecomposition s;
  s.U = IntMatrix::identity(a.rows());
  s.V = IntMatrix::identity(a.cols());
  s.D = a;
  IntMatrix& d = s.D;
  std::size_t t = 0;
  const std::size_t tmax = std::min(a.rows(), a.cols());
  while (t < tmax) {
    std::size_t pi = 0, pj = 0;
    if (!detail::find_pivot(d, t, pi, pj)) break;
    d.swap_rows(t, pi);
    s.U.swap_rows(t, pi);
    d.swap_cols(t, pj);
    s.V.swap_cols(t, pj);

    bool clean = true;
    for (std::size_t r = t + 1; r < d.rows(); ++r) {
      if (d.at(r, t) == 0) continue;
      Int q = d.at(r, t) / d.at(t, t);
      d.add_row(r, t, -q);
      s.U.add_row(r, t, -q);
      if (d.at(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < d.cols(); ++c) {
      if (d.at(t, c) == 0) continue;
      Int q = d.at(t, c) / d.at(t, t);
      d.add_col(c, t, -q);
      s.V.add_col(c, t, -q);
      if (d.at(t, c) != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders exist; re-pick pivot

    // Divisibility fix-up: the pivot must divide the whole trailing block.
    bool fixed = true;
    for (std::size_t r = t + 1; r < d.rows() && fixed; ++r)
      for (std::size_t c = t + 1; c < d.cols() && fixed; ++c)
        if (d.at(r, c) % d.at(t, t) != 0) {
          d.add_row(t, r, Int(1));
          s.U.add_row(t, r, Int(1));
          fixed = false;
        }
    if (fixed) ++t;
  }
  for (std::size_t i = 0; i < tmax; ++i)
    if (d.at(i, i) < 0) {
      d.negate_row(i);
      s.U.negate_row(i);
    }
  for (std::size_t i = 0; i < tmax; ++i)
    if (d.at(i, i) != 0) {
      s.invariant_factors.push_back(d.at(i, i));
      ++s.rank;
    }
  return s;
}

// Fraction-free determinant (Bareiss).
inline Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = exact_div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// Basis for { x : A x = 0 } from the SNF: columns of V beyond the rank.
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& a) {
  SnfDecomposition s = smith_normal_form(a);
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = s.rank; j < a.cols(); ++j) basis.push_back(s.V.col(j));
  return basis;
}

// One solution of A x = c, if any.
inline std::optional<std::vector<Int>> solve_linear(const IntMatrix& a, const std::vector<Int>& c) {
  if (c.size() != a.rows()) throw std::invalid_argument("solve_linear: size mismatch");
  SnfDecomposition s = smith_normal_form(a);
  std::vector<Int> cu = s.U.mul_vec(c);
  std::vector<Int> w(a.cols(), Int(0));
  for (std::size_t i = 0; i < cu.size(); ++i) {
    if (i < s.rank) {
      const Int& di = s.D.at(i, i);
      if (cu[i] % di != 0) return std::nullopt;
      w[i] = cu[i] / di;
    } else if (cu[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.mul_vec(w);
}

struct QuotientSolution {
  std::vector<Int> x;                           // one solution of A x = c mod span(S)
  std::vector<std::vector<Int>> kernel_basis;   // generates { x : A x = 0 mod span(S) }
};

// Solve A x = c modulo the subgroup of the target generated by the rows of S.
// A is r x c, c has length r, S rows have length r. Absence of a solution is a
// result, not an error; dimension mismatches throw.
inline std::optional<QuotientSolution> solve_in_quotient(const IntMatrix& a,
                                                         const std::vector<Int>& c,
                                                         const IntMatrix& sub) {
  if (c.size() != a.rows()) throw std::invalid_argument("solve_in_quotient: rhs size mismatch");
  if (sub.rows() > 0 && sub.cols() != a.rows())
    throw std::invalid_argument("solve_in_quotient: subgroup width mismatch");
  const std::size_t nx = a.cols();
  const std::size_t ns = sub.rows();
  IntMatrix b(a.rows(), nx + ns);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < nx; ++j) b.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < ns; ++j) b.at(i, nx + j) = sub.at(j, i);
  }
  auto z = solve_linear(b, c);
  if (!z) return std::nullopt;
  QuotientSolution out;
  out.x.assign(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(nx));
  for (auto& k : integer_kernel(b)) {
    std::vector<Int> proj(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(nx));
    bool zero = true;
    for (const Int& v : proj) {
      if (v != 0) {
        zero = false;
        break;
      }
    }
    if (!zero) out.kernel_basis.push_back(std::move(proj));
  }
  return out;
}

// Row-style Hermite form of the lattice spanned by the rows: pivots positive,
// staircase left to right, entries above a pivot reduced into [0, pivot).
// Used internally for canonical coset representatives.
inline IntMatrix hermite_row_basis(const IntMatrix& rows) {
  IntMatrix m = rows;
  const std::size_t nr = m.rows(), nc = m.cols();
  std::size_t r = 0;
  for (std::size_t j = 0; j < nc && r < nr; ++j) {
    // gcd-out column j below row r
    while (true) {
      std::size_t p = nr;
      Int best;
      for (std::size_t i = r; i < nr; ++i) {
        if (m.at(i, j) == 0) continue;
        Int a = abs_int(m.at(i, j));
        if (p == nr || a < best) {
          p = i;
          best = a;
        }
      }
      if (p == nr) break;  // column clear
      m.swap_rows(r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < nr; ++i) {
        if (m.at(i, j) == 0) continue;
        Int q = m.at(i, j) / m.at(r, j);
        m.add_row(i, r, -q);
        if (m.at(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (m.at(r, j) == 0) continue;
    if (m.at(r, j) < 0) m.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(m.at(i, j), m.at(r, j));
      m.add_row(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(0, nc);
  for (std::size_t i = 0; i < r; ++i) out.append_row(m.row(i));
  return out;
}

// Canonical representative of v modulo the lattice with Hermite basis h.
inline std::vector<Int> hermite_reduce(std::vector<Int> v, const IntMatrix& h) {
  if (h.rows() == 0) return v;
  if (v.size() != h.cols()) throw std::invalid_argument("hermite_reduce: size mismatch");
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && h.at(i, j) == 0) ++j;
    if (j == h.cols()) continue;
    Int q = floor_div(v[j], h.at(i, j));
    if (q == 0) continue;
    for (std::size_t k = j; k < h.cols(); ++k) v[k] -= q * h.at(i, k);
  }
  return v;
}

// Finitely presented abelian group Z^g / rowspan(relations).
struct AbelianGroupPresentation {
  std::size_t num_generators = 0;
  IntMatrix relations;  // rows of length num_generators

  static AbelianGroupPresentation make(std::size_t g, const IntMatrix& rel) {
    if (rel.rows() > 0 && rel.cols() != g)
      throw std::invalid_argument("AbelianGroupPresentation: relation width mismatch");
    return AbelianGroupPresentation{g, rel};
  }
};

struct TensorZmodResult {
  Int cardinality;               // |G (x) Z/m|, always finite for m >= 1
  std::vector<Int> cyclic_orders;  // orders > 1 of the cyclic summands, divisibility chain
};

inline TensorZmodResult tensor_with_zmod(const AbelianGroupPresentation& g, const Int& m) {
  if (m < 1) throw std::invalid_argument("tensor_with_zmod: m must be >= 1");
  SnfDecomposition s = smith_normal_form(g.relations);
  const std::size_t free_rank = g.num_generators - s.rank;
  TensorZmodResult out;
  out.cardinality = 1;
  for (const Int& d : s.invariant_factors) {
    Int o = gcd_int(d, m);
    out.cardinality *= o;
    if (o > 1) out.cyclic_orders.push_back(o);
  }
  for (std::size_t i = 0; i < free_rank; ++i) {
    out.cardinality *= m;
    if (m > 1) out.cyclic_orders.push_back(m);
  }
  return out;
}

struct TorZmodResult {
  bool is_tor_free;
  Int cardinality;  // |Tor(G, Z/m)|
};

inline TorZmodResult tor_with_zmod(const AbelianGroupPresentation& g, const Int& m) {
  if (m < 1) throw std::invalid_argument("tor_with_zmod: m must be >= 1");
  SnfDecomposition s = smith_normal_form(g.relations);
  TorZmodResult out{true, Int(1)};
  for (const Int& d : s.invariant_factors) {
    Int o = gcd_int(d, m);
    out.cardinality *= o;
    if (o > 1) out.is_tor_free = false;
  }
  return out;
}

}  // namespace oeclass
