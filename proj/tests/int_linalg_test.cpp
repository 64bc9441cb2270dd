#include "oeclass/int_linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace oeclass {
namespace {

constexpr unsigned kSeed = 20240817;

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dist(rng);
  return m;
}

TEST(SmithNormalForm, KnownSmallCases) {
  {
    SnfDecomposition s = smith_normal_form(IntMatrix::from_rows({{Int(0)}}));
    EXPECT_EQ(s.rank, 0u);
    EXPECT_TRUE(s.invariant_factors.empty());
  }
  {
    SnfDecomposition s = smith_normal_form(IntMatrix::from_rows({{Int(5)}}));
    ASSERT_EQ(s.invariant_factors.size(), 1u);
    EXPECT_EQ(s.invariant_factors[0], 5);
  }
  {
    SnfDecomposition s =
        smith_normal_form(IntMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(3)}}));
    ASSERT_EQ(s.invariant_factors.size(), 2u);
    EXPECT_EQ(s.invariant_factors[0], 1);
    EXPECT_EQ(s.invariant_factors[1], 6);
  }
  {
    // 2x3 of rank 2 with a content gcd
    SnfDecomposition s =
        smith_normal_form(IntMatrix::from_rows({{Int(2), Int(4), Int(4)}, {Int(-6), Int(6), Int(12)}}));
    ASSERT_EQ(s.invariant_factors.size(), 2u);
    EXPECT_EQ(s.invariant_factors[0], 2);
    EXPECT_EQ(s.invariant_factors[1], 6);
  }
}

TEST(SmithNormalForm, TransformsAreUnimodularAndExact) {
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix a = random_matrix(rng, r, c, -9, 9);
    SnfDecomposition s = smith_normal_form(a);

    EXPECT_EQ(s.U.mul(a).mul(s.V), s.D);
    EXPECT_EQ(abs_int(determinant(s.U)), 1);
    EXPECT_EQ(abs_int(determinant(s.V)), 1);

    for (std::size_t i = 0; i < s.D.rows(); ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j) EXPECT_EQ(s.D.at(i, j), 0);
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i) {
      EXPECT_GT(s.invariant_factors[i], 0);
      EXPECT_EQ(s.invariant_factors[i + 1] % s.invariant_factors[i], 0);
    }
  }
}

TEST(SmithNormalForm, Deterministic) {
  IntMatrix a = IntMatrix::from_rows({{Int(6), Int(4)}, {Int(10), Int(8)}});
  SnfDecomposition s1 = smith_normal_form(a);
  SnfDecomposition s2 = smith_normal_form(a);
  EXPECT_EQ(s1.D, s2.D);
  EXPECT_EQ(s1.U, s2.U);
  EXPECT_EQ(s1.V, s2.V);
}

TEST(SolveLinear, RandomConstructedSystems) {
  std::mt19937_64 rng(kSeed + 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix a = random_matrix(rng, r, c, -6, 6);
    std::uniform_int_distribution<int> xd(-5, 5);
    std::vector<Int> x0(c);
    for (auto& v : x0) v = xd(rng);
    std::vector<Int> rhs = a.mul_vec(x0);
    auto x = solve_linear(a, rhs);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a.mul_vec(*x), rhs);
  }
}

TEST(SolveLinear, DetectsAbsence) {
  IntMatrix a = IntMatrix::from_rows({{Int(2)}});
  EXPECT_FALSE(solve_linear(a, {Int(3)}).has_value());
  EXPECT_TRUE(solve_linear(a, {Int(4)}).has_value());
  IntMatrix zero = IntMatrix::from_rows({{Int(0)}});
  EXPECT_FALSE(solve_linear(zero, {Int(1)}).has_value());
}

bool in_row_span(const IntMatrix& s, const std::vector<Int>& v) {
  if (s.rows() == 0) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
  }
  return solve_linear(s.transpose(), v).has_value();
}

TEST(SolveInQuotient, SpecExamples) {
  {
    auto sol = solve_in_quotient(IntMatrix::from_rows({{Int(2)}}), {Int(2)}, IntMatrix());
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(sol->x[0], 1);
  }
  {
    auto sol = solve_in_quotient(IntMatrix::from_rows({{Int(2)}}), {Int(1)}, IntMatrix());
    EXPECT_FALSE(sol.has_value());
  }
  {
    IntMatrix a = IntMatrix::from_rows({{Int(4)}});
    IntMatrix s = IntMatrix::from_rows({{Int(6)}});
    auto sol = solve_in_quotient(a, {Int(2)}, s);
    ASSERT_TRUE(sol.has_value());
    std::vector<Int> residual = a.mul_vec(sol->x);
    residual[0] -= 2;
    EXPECT_TRUE(in_row_span(s, residual));
  }
}

TEST(SolveInQuotient, DimensionMismatchThrows) {
  IntMatrix a = IntMatrix::from_rows({{Int(1), Int(2)}});
  EXPECT_THROW(solve_in_quotient(a, {Int(1), Int(2)}, IntMatrix()), std::invalid_argument);
  IntMatrix s = IntMatrix::from_rows({{Int(1), Int(2)}});
  EXPECT_THROW(solve_in_quotient(a, {Int(1)}, s), std::invalid_argument);
}

TEST(SolveInQuotient, RandomAgainstExhaustiveSearch) {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_int_distribution<int> ed(-3, 3);
  for (int trial = 0; trial < 150; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 2);
    std::size_t r = dim(rng), c = dim(rng), sr = dim(rng) - 1;
    IntMatrix a = random_matrix(rng, r, c, -3, 3);
    IntMatrix s = random_matrix(rng, sr, r, -3, 3);
    std::vector<Int> rhs(r);
    for (auto& v : rhs) v = ed(rng);

    // Oracle: search x in [-10,10]^c and subgroup coefficients in [-10,10]^sr.
    bool oracle = false;
    const int B = 10;
    std::vector<int> x(c, -B);
    while (!oracle) {
      std::vector<Int> lhs(r, Int(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) lhs[i] += a.at(i, j) * x[j];
      std::vector<Int> diff(r);
      for (std::size_t i = 0; i < r; ++i) diff[i] = lhs[i] - rhs[i];
      if (in_row_span(s, diff)) oracle = true;
      std::size_t k = 0;
      while (k < c && x[k] == B) {
        x[k] = -B;
        ++k;
      }
      if (k == c) break;
      ++x[k];
    }

    auto sol = solve_in_quotient(a, rhs, s);
    if (sol.has_value()) {
      std::vector<Int> residual = a.mul_vec(sol->x);
      for (std::size_t i = 0; i < r; ++i) residual[i] -= rhs[i];
      EXPECT_TRUE(in_row_span(s, residual));
      for (const auto& k : sol->kernel_basis) {
        std::vector<Int> img = a.mul_vec(k);
        EXPECT_TRUE(in_row_span(s, img));
      }
    } else {
      // Solver absence must not contradict an oracle witness.
      EXPECT_FALSE(oracle);
    }
  }
}

// Tuple-model oracle: G = Z/d_1 x ... x Z/d_k built directly from known cyclic
// orders; tensor and Tor cardinalities found by enumerating elements.
struct TupleGroup {
  std::vector<int> orders;  // all > 0, product <= 64

  std::vector<std::vector<int>> elements() const {
    std::vector<std::vector<int>> out{{}};
    for (int d : orders) {
      std::vector<std::vector<int>> next;
      for (const auto& e : out)
        for (int v = 0; v < d; ++v) {
          auto e2 = e;
          e2.push_back(v);
          next.push_back(e2);
        }
      out = next;
    }
    return out;
  }

  Int tensor_card(const Int& m) const {
    // |G/mG| = |G| / |mG|, with mG enumerated as {m*g}.
    auto elems = elements();
    std::set<std::vector<int>> image;
    for (const auto& e : elems) {
      std::vector<int> me(e.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        me[i] = static_cast<int>(floor_mod(m * e[i], Int(orders[i])).convert_to<long>());
      image.insert(me);
    }
    return Int(elems.size()) / Int(image.size());
  }

  Int tor_card(const Int& m) const {
    auto elems = elements();
    Int count = 0;
    for (const auto& e : elems) {
      bool killed = true;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (floor_mod(m * e[i], Int(orders[i])) != 0) killed = false;
      if (killed) ++count;
    }
    return count;
  }
};

// Present the same group by a scrambled relation matrix: diagonal orders hit
// with random unimodular row and column operations.
AbelianGroupPresentation scrambled_presentation(const TupleGroup& g, std::mt19937_64& rng) {
  std::size_t n = g.orders.size();
  IntMatrix rel(n, n);
  for (std::size_t i = 0; i < n; ++i) rel.at(i, i) = g.orders[i];
  std::uniform_int_distribution<int> kd(-2, 2);
  std::uniform_int_distribution<std::size_t> idx(0, n > 0 ? n - 1 : 0);
  for (int step = 0; step < 12 && n > 1; ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    rel.add_row(i, j, Int(kd(rng)));
    rel.add_col(i, j, Int(kd(rng)));
  }
  return AbelianGroupPresentation::make(n, rel);
}

TEST(TensorTor, AgreesWithTupleEnumeration) {
  std::mt19937_64 rng(kSeed + 3);
  std::vector<TupleGroup> groups = {
      {{1}}, {{2}}, {{3}}, {{4}}, {{6}}, {{2, 2}}, {{2, 4}}, {{2, 3}},
      {{4, 4}}, {{2, 2, 2}}, {{2, 6}}, {{3, 12}}, {{2, 2, 12}}, {{8, 8}},
  };
  for (const auto& g : groups) {
    AbelianGroupPresentation pres = scrambled_presentation(g, rng);
    for (int m = 1; m <= 12; ++m) {
      TensorZmodResult t = tensor_with_zmod(pres, Int(m));
      EXPECT_EQ(t.cardinality, g.tensor_card(m)) << "tensor, m=" << m;
      Int card_from_orders = 1;
      for (const Int& o : t.cyclic_orders) card_from_orders *= o;
      EXPECT_EQ(card_from_orders, t.cardinality);
      for (std::size_t i = 0; i + 1 < t.cyclic_orders.size(); ++i)
        EXPECT_EQ(t.cyclic_orders[i + 1] % t.cyclic_orders[i], 0);

      TorZmodResult tor = tor_with_zmod(pres, Int(m));
      EXPECT_EQ(tor.cardinality, g.tor_card(m)) << "tor, m=" << m;
      EXPECT_EQ(tor.is_tor_free, tor.cardinality == 1);
    }
  }
}

TEST(TensorTor, FreePartContributes) {
  // Z^2: tensor with Z/3 has 9 elements, no Tor.
  AbelianGroupPresentation free2 = AbelianGroupPresentation::make(2, IntMatrix());
  TensorZmodResult t = tensor_with_zmod(free2, Int(3));
  EXPECT_EQ(t.cardinality, 9);
  TorZmodResult tor = tor_with_zmod(free2, Int(3));
  EXPECT_TRUE(tor.is_tor_free);
  EXPECT_EQ(tor.cardinality, 1);

  // Z/2: no 3-torsion, 2-torsion of order 2.
  AbelianGroupPresentation z2 =
      AbelianGroupPresentation::make(1, IntMatrix::from_rows({{Int(2)}}));
  EXPECT_EQ(tensor_with_zmod(z2, Int(3)).cardinality, 1);
  EXPECT_EQ(tensor_with_zmod(z2, Int(2)).cardinality, 2);
  EXPECT_FALSE(tor_with_zmod(z2, Int(2)).is_tor_free);
  EXPECT_EQ(tor_with_zmod(z2, Int(2)).cardinality, 2);
  EXPECT_TRUE(tor_with_zmod(AbelianGroupPresentation::make(
                                1, IntMatrix::from_rows({{Int(6)}})),
                            Int(35))
                  .is_tor_free);
}

TEST(HermiteReduction, CanonicalResidues) {
  // Lattice spanned by (2,0) and (0,3): residues are [0,2) x [0,3).
  IntMatrix h = hermite_row_basis(IntMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(3)}}));
  std::set<std::vector<Int>> seen;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) seen.insert(hermite_reduce({Int(a), Int(b)}, h));
  EXPECT_EQ(seen.size(), 6u);
  for (const auto& v : seen) {
    EXPECT_GE(v[0], 0);
    EXPECT_LT(v[0], 2);
    EXPECT_GE(v[1], 0);
    EXPECT_LT(v[1], 3);
  }
}

TEST(HermiteReduction, ReduceIsInvariantOnCosets) {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_int_distribution<int> cd(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix rows = random_matrix(rng, 3, 4, -5, 5);
    IntMatrix h = hermite_row_basis(rows);
    std::vector<Int> v(4);
    for (auto& x : v) x = cd(rng);
    std::vector<Int> shifted = v;
    for (std::size_t i = 0; i < rows.rows(); ++i) {
      Int k = cd(rng);
      for (std::size_t j = 0; j < 4; ++j) shifted[j] += k * rows.at(i, j);
    }
    EXPECT_EQ(hermite_reduce(v, h), hermite_reduce(shifted, h));
    // Residue of a lattice vector is zero.
    EXPECT_EQ(hermite_reduce(rows.row(0), h), std::vector<Int>(4, Int(0)));
  }
}

TEST(IntegerKernel, KernelVectorsAnnihilate) {
  std::mt19937_64 rng(kSeed + 5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = random_matrix(rng, 2, 4, -5, 5);
    for (const auto& k : integer_kernel(a)) {
      std::vector<Int> img = a.mul_vec(k);
      for (const Int& x : img) EXPECT_EQ(x, 0);
    }
  }
}

}  // namespace
}  // namespace oeclass
