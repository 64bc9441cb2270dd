#include "oeclass/ringcore.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <vector>

#include "oeclass/polyfam.hpp"

namespace oeclass {
namespace {

// Z[x]/(x^3) reduced part: generators x, x^2.
RingPresentation make_cp2() {
  return RingPresentation(
      {"x", "x^2"}, {Int(0), Int(0)}, {1, 2},
      {{{0, 0}, {Int(0), Int(1)}}, {{0, 1}, {Int(0), Int(0)}}, {{1, 1}, {Int(0), Int(0)}}});
}

// Reduced part of K^0(RP^2): one generator z of order 2 with z^2 = 0.
RingPresentation make_rp2() {
  return RingPresentation({"z"}, {Int(2)}, {1}, {{{0, 0}, {Int(0)}}});
}

RingElement el(const RingPresentation& r, std::vector<long> c) {
  std::vector<Int> v(c.begin(), c.end());
  return make_element(r, v);
}

TEST(RingPresentation, ValidCp2) {
  RingPresentation r = make_cp2();
  RingValidationReport rep = validate(r);
  EXPECT_TRUE(rep.valid) << (rep.violations.empty() ? "" : rep.violations[0].axiom);
  EXPECT_EQ(nilpotency_index(r), 2);
  EXPECT_EQ(r.max_filtration_level(), 2);
}

TEST(RingPresentation, ValidRp2) {
  RingPresentation r = make_rp2();
  EXPECT_TRUE(validate(r).valid);
  EXPECT_EQ(nilpotency_index(r), 1);
  // torsion reduction: 2z = 0, 3z = z, -z = z
  EXPECT_TRUE(el(r, {2}).is_zero());
  EXPECT_EQ(el(r, {3}), el(r, {1}));
  EXPECT_EQ(el(r, {-1}), el(r, {1}));
}

TEST(RingPresentation, ArithmeticOnCp2) {
  RingPresentation r = make_cp2();
  RingElement x = ring_generator(r, 0);
  RingElement x2 = ring_generator(r, 1);
  EXPECT_EQ(ring_mul(x, x), x2);
  EXPECT_TRUE(ring_mul(x, x2).is_zero());
  EXPECT_TRUE(ring_mul(x2, x2).is_zero());
  RingElement a = el(r, {3, 0});
  EXPECT_EQ(ring_mul(a, a), el(r, {0, 9}));
  EXPECT_EQ(pretty(el(r, {12, -9})), "12x-9x^2");
  EXPECT_EQ(pretty(ring_zero(r)), "0");
  EXPECT_EQ(pretty(el(r, {1, -1})), "x-x^2");
}

TEST(RingPresentation, MismatchThrows) {
  RingPresentation a = make_cp2();
  RingPresentation b = make_rp2();
  EXPECT_THROW(ring_add(ring_generator(a, 0), ring_generator(b, 0)), std::invalid_argument);
  // structurally equal presentations interoperate
  RingPresentation a2 = make_cp2();
  EXPECT_EQ(ring_add(ring_generator(a, 0), ring_generator(a2, 0)), el(a, {2, 0}));
}

TEST(EvalPoly, MatchesHandExpansion) {
  RingPresentation r = make_cp2();
  // p_2 with m=2 is 4t - t^2; at t = 3x this is 12x - 9x^2.
  IntPolynomial p = p_poly(2, Int(2));
  std::map<std::string, RingElement> asg{{"x", el(r, {3, 0})}};
  EXPECT_EQ(eval_poly(r, p, asg), el(r, {12, -9}));
  // at t = x: 4x - x^2
  asg["x"] = el(r, {1, 0});
  EXPECT_EQ(eval_poly(r, p, asg), el(r, {4, -1}));
}

TEST(EvalPoly, RejectsConstantTermAndMissingVariable) {
  RingPresentation r = make_cp2();
  std::vector<PolyVar> bv{{"b", 1}};
  IntPolynomial with_const = IntPolynomial::constant(bv, Int(2));
  std::map<std::string, RingElement> asg{{"b", el(r, {1, 0})}};
  EXPECT_THROW(eval_poly(r, with_const, asg), std::invalid_argument);
  IntPolynomial p = p_poly(2, Int(2));
  std::map<std::string, RingElement> empty_asg;
  EXPECT_THROW(eval_poly(r, p, empty_asg), std::invalid_argument);
}

TEST(EvalPoly, TwoVariableProduct) {
  RingPresentation r = make_cp2();
  // z * T_2(y) with m=2: z*(2 - y) evaluated at z = 2x, y = x gives 4x - 2x^2.
  std::vector<PolyVar> zy{{"z", 1}, {"y", 1}};
  IntPolynomial t2 = T_poly(2, Int(2));
  IntPolynomial zt = IntPolynomial::variable(zy, 0) * t2.compose(zy, {{"b", IntPolynomial::variable(zy, 1)}});
  std::map<std::string, RingElement> asg{{"z", el(r, {2, 0})}, {"y", el(r, {1, 0})}};
  EXPECT_EQ(eval_poly(r, zt, asg), el(r, {4, -2}));
}

TEST(IdealPower, Cp2Chain) {
  RingPresentation r = make_cp2();
  SubmodulePresentation p1 = ideal_power(r, 1);
  SubmodulePresentation p2 = ideal_power(r, 2);
  SubmodulePresentation p3 = ideal_power(r, 3);
  EXPECT_FALSE(submodule_is_zero(r, p1));
  EXPECT_FALSE(submodule_is_zero(r, p2));
  EXPECT_TRUE(submodule_is_zero(r, p3));
  // R^2 is spanned by x^2
  ASSERT_EQ(p2.generators.size(), 1u);
  EXPECT_EQ(p2.generators[0], el(r, {0, 1}).coeff);
}

TEST(FiltrationSubmodule, LevelsSelectGenerators) {
  RingPresentation r = make_cp2();
  EXPECT_EQ(filtration_submodule(r, 1).generators.size(), 2u);
  EXPECT_EQ(filtration_submodule(r, 2).generators.size(), 1u);
  EXPECT_EQ(filtration_submodule(r, 3).generators.size(), 0u);
  EXPECT_TRUE(in_submodule(el(r, {0, 5}), filtration_submodule(r, 2)));
  EXPECT_FALSE(in_submodule(el(r, {1, 0}), filtration_submodule(r, 2)));
}

TEST(IsDivisible, Cp2Witnesses) {
  RingPresentation r = make_cp2();
  SubmodulePresentation zero_sub;
  auto w = is_divisible(el(r, {8, -8}), Int(4), zero_sub);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, el(r, {2, -2}));
  EXPECT_FALSE(is_divisible(el(r, {4, -2}), Int(4), zero_sub).has_value());
  // modulo the filtration part the obstruction can vanish
  auto w2 = is_divisible(el(r, {4, -2}), Int(4), filtration_submodule(r, 2));
  ASSERT_TRUE(w2.has_value());
}

TEST(IsDivisible, TorsionInteraction) {
  RingPresentation r = make_rp2();
  // z = 3z, so z is divisible by 3; z is not divisible by 2.
  EXPECT_TRUE(is_divisible(el(r, {1}), Int(3), {}).has_value());
  EXPECT_FALSE(is_divisible(el(r, {1}), Int(2), {}).has_value());
}

TEST(MultiplicationEndomorphism, MatchesProducts) {
  RingPresentation r = make_cp2();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> cd(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    RingElement a = el(r, {cd(rng), cd(rng)});
    RingElement b = el(r, {cd(rng), cd(rng)});
    IntMatrix m = multiplication_endomorphism(r, a);
    std::vector<Int> image = m.mul_vec(b.coeff);
    EXPECT_EQ(make_element(r, image), ring_mul(a, b));
  }
}

TEST(Validate, DetectsNonassociativeTable) {
  // a*a = b, a*b = a, b*b = 0: (aa)b = 0 but a(ab) = b.
  RingPresentation r({"a", "b"}, {Int(0), Int(0)}, {1, 2},
                     {{{0, 0}, {Int(0), Int(1)}},
                      {{0, 1}, {Int(1), Int(0)}},
                      {{1, 1}, {Int(0), Int(0)}}});
  RingValidationReport rep = validate(r);
  EXPECT_FALSE(rep.valid);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "associativity") found = true;
  EXPECT_TRUE(found);
}

TEST(Validate, DetectsFiltrationViolation) {
  // x*x = x needs level(x) >= 2*level(x), impossible at level 1.
  RingPresentation r({"x"}, {Int(0)}, {1}, {{{0, 0}, {Int(1)}}});
  RingValidationReport rep = validate(r);
  EXPECT_FALSE(rep.valid);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "filtration-multiplicative") found = true;
  EXPECT_TRUE(found);
}

TEST(Validate, DetectsRelationViolation) {
  // a of order 2, b free, a*a = b: the relation 2a times a gives 2b, not a relation.
  RingPresentation r({"a", "b"}, {Int(2), Int(0)}, {1, 2},
                     {{{0, 0}, {Int(0), Int(1)}},
                      {{0, 1}, {Int(0), Int(0)}},
                      {{1, 1}, {Int(0), Int(0)}}});
  RingValidationReport rep = validate(r);
  EXPECT_FALSE(rep.valid);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "products-respect-relations") found = true;
  EXPECT_TRUE(found);
}

TEST(RingAxioms, RandomizedOnCp2AndRp2) {
  std::mt19937_64 rng(20240818);
  std::uniform_int_distribution<int> cd(-6, 6);
  std::vector<RingPresentation> rings;
  rings.push_back(make_cp2());
  rings.push_back(make_rp2());
  for (const RingPresentation& r : rings) {
    const std::size_t g = r.num_generators();
    auto rand_el = [&] {
      std::vector<Int> v(g);
      for (auto& x : v) x = cd(rng);
      return make_element(r, v);
    };
    for (int trial = 0; trial < 200; ++trial) {
      RingElement a = rand_el(), b = rand_el(), c = rand_el();
      EXPECT_EQ(ring_add(a, b), ring_add(b, a));
      EXPECT_EQ(ring_mul(a, b), ring_mul(b, a));
      EXPECT_EQ(ring_mul(ring_mul(a, b), c), ring_mul(a, ring_mul(b, c)));
      EXPECT_EQ(ring_mul(a, ring_add(b, c)), ring_add(ring_mul(a, b), ring_mul(a, c)));
      EXPECT_TRUE(ring_sub(a, a).is_zero());
      EXPECT_EQ(ring_scalar_mul(Int(3), a), ring_add(a, ring_add(a, a)));
    }
  }
}

TEST(VirtualClass, UnitalizationArithmetic) {
  RingPresentation r = make_cp2();
  VirtualClass one = virtual_int(1, r);
  VirtualClass x{Int(0), ring_generator(r, 0)};
  VirtualClass a = virtual_add(one, x);            // 1 + x
  VirtualClass b = virtual_sub(one, x);            // 1 - x
  VirtualClass prod = virtual_mul(a, b);           // 1 - x^2
  EXPECT_EQ(prod.n, 1);
  EXPECT_EQ(prod.t, el(r, {0, -1}));
  EXPECT_EQ(pretty(prod), "1-x^2");
  EXPECT_EQ(pretty(virtual_int(3, r)), "3");
  EXPECT_EQ(pretty(x), "x");
}

}  // namespace
}  // namespace oeclass
