#include "oeclass/polyfam.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace oeclass {
namespace {

TEST(Lcm1ToN, Values) {
  EXPECT_EQ(lcm_1_to_n(1), 1);
  EXPECT_EQ(lcm_1_to_n(2), 2);
  EXPECT_EQ(lcm_1_to_n(3), 6);
  EXPECT_EQ(lcm_1_to_n(4), 12);
  EXPECT_EQ(lcm_1_to_n(5), 60);
  EXPECT_EQ(lcm_1_to_n(6), 60);
  EXPECT_EQ(lcm_1_to_n(7), 420);
  EXPECT_EQ(lcm_1_to_n(8), 840);
  EXPECT_THROW(lcm_1_to_n(0), std::invalid_argument);
}

TEST(PPoly, PrintedFamily) {
  EXPECT_EQ(p_poly_sym(1).pretty(), "x");
  EXPECT_EQ(p_poly_sym(2).pretty(), "2mx-x^2");
  EXPECT_EQ(p_poly_sym(3).pretty(), "6m^2x-3mx^2+2x^3");
  EXPECT_EQ(p_poly_sym(4).pretty(), "12m^3x-6m^2x^2+4mx^3-3x^4");
  EXPECT_EQ(p_poly_sym(5).pretty(), "60m^4x-30m^3x^2+20m^2x^3-15mx^4+12x^5");
}

TEST(PPoly, NumericInstances) {
  EXPECT_EQ(p_poly(2, Int(2)).pretty(), "-x^2+4x");
  EXPECT_EQ(p_poly(3, Int(1)).pretty(), "2x^3-3x^2+6x");
  // leading coefficient l(n)/1 * m^{n-1}
  EXPECT_EQ(p_poly(5, Int(3)).coeff_of({1}), Int(60) * 81);
}

TEST(PPoly, RecurrenceHolds) {
  for (int n = 1; n <= 9; ++n)
    for (int m = 1; m <= 6; ++m) EXPECT_TRUE(recurrence_check(n, Int(m))) << n << "," << m;
}

TEST(TPoly, GeometricIdentity) {
  // (m+b) T_n(b) = m^n - (-b)^n, checked as exact polynomial identity.
  for (int n = 1; n <= 12; ++n) {
    for (int m = 1; m <= 6; ++m) {
      IntPolynomial t = T_poly(n, Int(m));
      std::vector<PolyVar> bv = t.vars();
      IntPolynomial lhs =
          (IntPolynomial::variable(bv, 0) + IntPolynomial::constant(bv, Int(m))) * t;
      IntPolynomial rhs = IntPolynomial::constant(bv, pow_int(Int(m), n));
      rhs.add_term({n}, (n % 2 == 1) ? Int(1) : Int(-1));
      EXPECT_EQ(lhs, rhs) << "n=" << n << " m=" << m;
    }
  }
}

TEST(TPoly, SmallInstances) {
  EXPECT_EQ(T_poly_sym(1).pretty(), "1");
  EXPECT_EQ(T_poly_sym(2).pretty(), "m-b");
  EXPECT_EQ(T_poly_sym(3).pretty(), "m^2-mb+b^2");
  EXPECT_EQ(T_poly(2, Int(2)).pretty(), "-b+2");
}

TEST(NewtonPoly, PrintedFamily) {
  EXPECT_EQ(newton_poly(1).pretty(), "s1");
  EXPECT_EQ(newton_poly(2).pretty(), "s1^2-2s2");
  EXPECT_EQ(newton_poly(3).pretty(), "s1^3-3s1s2+3s3");
  EXPECT_EQ(newton_poly(4).pretty(), "s1^4-4s1^2s2+4s1s3+2s2^2-4s4");
}

// Oracle: Q_k evaluated at the elementary symmetric polynomials of t_1..t_k
// must equal the power sum t_1^k + ... + t_k^k.
TEST(NewtonPoly, PowerSumOracle) {
  for (int k = 1; k <= 5; ++k) {
    std::vector<PolyVar> tv;
    for (int i = 1; i <= k; ++i) tv.push_back({"t" + std::to_string(i), 1});
    // elementary symmetric e_j over t-vars
    std::vector<IntPolynomial> elem(k + 1, IntPolynomial::zero(tv));
    elem[0] = IntPolynomial::constant(tv, Int(1));
    for (int j = 1; j <= k; ++j) {
      // e_j = sum over j-subsets
      IntPolynomial ej(tv);
      std::vector<int> comb(j);
      std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == j) {
          std::vector<int> e(tv.size(), 0);
          for (int c : comb) e[c] = 1;
          ej.add_term(e, Int(1));
          return;
        }
        for (int c = start; c < k; ++c) {
          comb[pos] = c;
          rec(pos + 1, c + 1);
        }
      };
      rec(0, 0);
      elem[j] = ej;
    }
    std::map<std::string, IntPolynomial> images;
    for (int j = 1; j <= k; ++j) images["s" + std::to_string(j)] = elem[j];
    IntPolynomial lhs = newton_poly(k).compose(tv, images);
    IntPolynomial rhs(tv);
    for (int i = 0; i < k; ++i) {
      std::vector<int> e(tv.size(), 0);
      e[i] = k;
      rhs.add_term(e, Int(1));
    }
    EXPECT_EQ(lhs, rhs) << "k=" << k;
  }
}

TEST(QPoly, PrintedFamily) {
  EXPECT_EQ(q_poly_sym(1).pretty(), "x1");
  EXPECT_EQ(q_poly_sym(2).pretty(), "mx2-x1^2");
  EXPECT_EQ(q_poly_sym(3).pretty(), "m^2x3-3mx1x2+2x1^3");
  EXPECT_EQ(q_poly_sym(4).pretty(), "m^3x4-4m^2x1x3-3m^2x2^2+12mx1^2x2-6x1^4");
}

TEST(QPoly, ConstructionMatchesClosedFormAndIsIntegral) {
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 5; ++m) {
      IntPolynomial q = q_poly(n, Int(m));  // throws on any route disagreement
      EXPECT_EQ(q, q_closed_form(n, Int(m)));
    }
}

TEST(QPoly, RPolyIsUnitMultiplierInstance) {
  EXPECT_EQ(r_poly(1).pretty(), "x1");
  EXPECT_EQ(r_poly(2).pretty(), "-x1^2+x2");
  EXPECT_EQ(r_poly(3).pretty(), "2x1^3-3x1x2+x3");
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(r_poly(n), q_closed_form(n, Int(1)));
}

TEST(QPoly, AllOnesValues) {
  // q_1(1) = 1, q_2(1,1) = m-1 for line bundle comparisons.
  EXPECT_EQ(q_all_ones(1, Int(5)), 1);
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(q_all_ones(2, Int(m)), Int(m) - 1);
}

TEST(ACoeff, RecurrenceMatchesFactorialFormula) {
  auto factorial_form = [](int j, int k) {
    return exact_div(factorial(static_cast<unsigned>(j * k)),
                     pow_int(factorial(static_cast<unsigned>(j)), static_cast<unsigned>(k)) *
                         factorial(static_cast<unsigned>(k)));
  };
  for (int j = 1; j <= 6; ++j)
    for (int k = 1; k <= 6; ++k) EXPECT_EQ(a_coeff(j, k), factorial_form(j, k)) << j << "," << k;
  EXPECT_EQ(a_coeff(2, 2), 3);
  EXPECT_EQ(a_coeff(3, 2), 10);
  EXPECT_EQ(a_coeff(2, 3), 15);
}

TEST(LemmaAbc, SmallInstances) {
  {
    AbcDecomposition d = lemma_abc_decompose(1, Int(3));
    EXPECT_TRUE(d.u.is_zero());
    EXPECT_EQ(d.v.pretty(), "y");
    EXPECT_EQ(d.s_next.pretty(), "xy");
  }
  {
    AbcDecomposition d = lemma_abc_decompose(2, Int(2));
    EXPECT_EQ(d.u.pretty(), "-2");
    EXPECT_EQ(d.v.pretty(), "-y^2+2y");
  }
}

TEST(LemmaAbc, IdentitiesReconstruct) {
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 5; ++m) {
      AbcDecomposition d = lemma_abc_decompose(n, Int(m));
      std::vector<PolyVar> xy = d.u.vars();
      IntPolynomial p = p_poly(n, Int(m));
      IntPolynomial x = IntPolynomial::variable(xy, 0);
      IntPolynomial y = IntPolynomial::variable(xy, 1);
      IntPolynomial lhs = p.compose(xy, {{"x", x + y.scaled(Int(m)) + x * y}});
      IntPolynomial rhs = p.compose(xy, {{"x", x}}) +
                          d.v.compose(xy, {{"y", y}}).scaled(pow_int(Int(m), n)) + d.s_next;
      EXPECT_EQ(lhs, rhs) << "n=" << n << " m=" << m;
      if (!d.s_next.is_zero()) EXPECT_GE(d.s_next.min_total_degree(), n + 1);
    }
}

TEST(WPoly, ScalesPPoly) {
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 5; ++m) {
      Int scale = exact_div(factorial(static_cast<unsigned>(n)), lcm_1_to_n(n));
      EXPECT_EQ(W_poly(n, Int(m)), p_poly(n, Int(m)).scaled(scale));
    }
}

TEST(Truncation, WeightedExample) {
  // (x1 + x2/2 + x3/3)^2 keeps only x1 x2 at weight 3.
  std::vector<PolyVar> vars{{"x1", 1}, {"x2", 2}, {"x3", 3}};
  RationalPolynomial s(vars);
  s.add_term({1, 0, 0}, Rat(1));
  s.add_term({0, 1, 0}, Rat(1, 2));
  s.add_term({0, 0, 1}, Rat(1, 3));
  RationalPolynomial sq = s * s;
  RationalPolynomial part = sq.weighted_truncate(3);
  EXPECT_EQ(part.pretty(), "x1x2");
  EXPECT_EQ(sq.weighted_truncate(2).pretty(), "x1^2");
}

TEST(Polynomial, GroupedPrinting) {
  // (m-1)c1^2 - 2m c2 printed with m-coefficients grouped.
  std::vector<PolyVar> vars{{"m", 1}, {"c1", 1}, {"c2", 1}};
  IntPolynomial p(vars);
  p.add_term({1, 2, 0}, Int(1));
  p.add_term({0, 2, 0}, Int(-1));
  p.add_term({1, 0, 1}, Int(-2));
  EXPECT_EQ(pretty_grouped(p, "m"), "(m-1)c1^2-2mc2");
}

TEST(Polynomial, SubstituteAndArithmetic) {
  IntPolynomial p = p_poly_sym(2);
  EXPECT_EQ(p.substitute("m", Int(2)).pretty(), "-x^2+4x");
  EXPECT_EQ(p.substitute("x", Int(0)).pretty(), "0");
  EXPECT_THROW(p.substitute("z", Int(1)), std::invalid_argument);
  IntPolynomial q = p_poly(2, Int(2));
  EXPECT_THROW(p + q, std::invalid_argument);  // different variable lists
}

}  // namespace
}  // namespace oeclass
