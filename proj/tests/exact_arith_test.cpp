#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace surgerylab;

namespace {

std::vector<Integer> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

ContinuedFraction plus_cf(std::initializer_list<int> xs) {
  return ContinuedFraction::of(Convention::Plus, ints(xs));
}

ContinuedFraction minus_cf(std::initializer_list<int> xs) {
  return ContinuedFraction::of(Convention::Minus, ints(xs));
}

}  // namespace

TEST(Integer, FloorAndCeilDivisionRoundTowardInfinities) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(7, 2), 4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(gcd(-12, 18), 6);
}

TEST(Integer, ParsesSignedDecimal) {
  EXPECT_EQ(parse_integer("-42"), -42);
  EXPECT_EQ(parse_integer("123456789012345678901234567890").str(),
            "123456789012345678901234567890");
  EXPECT_THROW(parse_integer("12a"), DomainError);
  EXPECT_THROW(parse_integer(""), DomainError);
}

TEST(Rational, NormalisesSignAndCommonFactors) {
  const Rational x(6, -4);
  EXPECT_EQ(x.numerator(), -3);
  EXPECT_EQ(x.denominator(), 2);
  EXPECT_EQ(x.str(), "-3/2");
  EXPECT_EQ(Rational(8, 2).str(), "4");
  EXPECT_THROW(Rational(1, 0), DomainError);
}

TEST(Rational, ArithmeticAndOrderingAreExact) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_THROW(Rational(0).reciprocal(), DomainError);
}

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(Rational::parse("25/2"), Rational(25, 2));
  EXPECT_EQ(Rational::parse("-4"), Rational(-4));
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
  EXPECT_THROW(Rational::parse("1/0"), DomainError);
  EXPECT_THROW(Rational::parse("x"), DomainError);
}

TEST(ExtendedRational, InfinityFollowsProjectiveRules) {
  const auto inf = ExtendedRational::infinity();
  EXPECT_EQ(inf.reciprocal(), ExtendedRational(Rational(0)));
  EXPECT_EQ(ExtendedRational(Rational(0)).reciprocal(), inf);
  EXPECT_EQ(inf + ExtendedRational(Rational(5)), inf);
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_EQ(ExtendedRational::parse("inf"), inf);
}

TEST(ContinuedFraction, PlusExpansionExamples) {
  EXPECT_EQ(cf_plus(Rational(7, 5)), plus_cf({1, 2, 2}));
  EXPECT_EQ(cf_plus(Rational(3)), plus_cf({3}));
  EXPECT_EQ(cf_plus(Rational(3, 2)), plus_cf({1, 2}));
  EXPECT_THROW(cf_plus(Rational(0)), DomainError);
  EXPECT_THROW(cf_plus(Rational(-1, 2)), DomainError);
}

TEST(ContinuedFraction, MinusExpansionExamples) {
  EXPECT_EQ(cf_minus(Rational(7, 5)), minus_cf({2, 2, 3}));
  EXPECT_EQ(cf_minus(Rational(2)), minus_cf({2}));
  EXPECT_EQ(cf_minus(Rational(5, 4)), minus_cf({2, 2, 2, 2}));
  EXPECT_THROW(cf_minus(Rational(0)), DomainError);
}

TEST(ContinuedFraction, EvaluationHandlesInfinityAndZero) {
  // [3, inf]^- = 3 - 1/inf = 3
  ContinuedFraction with_inf(Convention::Minus, {ExtendedInteger(3), ExtendedInteger::infinity()});
  EXPECT_EQ(eval_cf(with_inf), ExtendedRational(Rational(3)));
  // [2, 0]^+ = 2 + 1/0 = inf
  EXPECT_EQ(eval_cf(plus_cf({2, 0})), ExtendedRational::infinity());
  EXPECT_FALSE(is_canonical(plus_cf({2, 0})));
  EXPECT_TRUE(is_canonical(minus_cf({1, 2, 3})));
  EXPECT_FALSE(is_canonical(minus_cf({2, 1})));
}

TEST(ContinuedFraction, TailCheckExamples) {
  auto t = cf_tail_check(7, 5);
  EXPECT_EQ(t.head, 1);
  EXPECT_EQ(t.tail, plus_cf({2, 2}));
  t = cf_tail_check(3, 2);
  EXPECT_EQ(t.head, 1);
  EXPECT_EQ(t.tail, plus_cf({2}));
  t = cf_tail_check(5, 2);
  EXPECT_EQ(t.head, 2);
  EXPECT_EQ(t.tail, plus_cf({2}));
  EXPECT_THROW(cf_tail_check(4, 2), DomainError);
  EXPECT_THROW(cf_tail_check(5, 1), DomainError);
}

TEST(ContinuedFraction, PlusToMinusExamples) {
  EXPECT_EQ(plus_to_minus(plus_cf({1, 2})), minus_cf({2, 2}));
  EXPECT_EQ(plus_to_minus(plus_cf({1, 2, 2})), minus_cf({2, 2, 3}));
  EXPECT_EQ(plus_to_minus(plus_cf({2, 2})), minus_cf({3, 2}));
}

TEST(ContinuedFraction, PlusToMinusRejectsLengthOneAndNonCanonical) {
  EXPECT_THROW(plus_to_minus(plus_cf({4})), DomainError);
  EXPECT_THROW(plus_to_minus(plus_cf({2, 1})), DomainError);
  EXPECT_THROW(plus_to_minus(minus_cf({2, 2})), DomainError);
}

TEST(ContinuedFraction, ComplementExamples) {
  EXPECT_EQ(cf_complement(5, 3), minus_cf({3, 2}));
  EXPECT_EQ(cf_complement(7, 5), minus_cf({4, 2}));
  EXPECT_EQ(cf_complement(3, 2), minus_cf({3}));
  EXPECT_THROW(cf_complement(4, 2), DomainError);
}

TEST(ContinuedFraction, ReverseDualExamples) {
  auto d = reverse_dual(7, 5);
  EXPECT_EQ(d.qstar, 3);
  EXPECT_EQ(d.reversed, minus_cf({3, 2, 2}));
  d = reverse_dual(5, 2);
  EXPECT_EQ(d.qstar, 3);
  EXPECT_EQ(d.reversed, minus_cf({2, 3}));
  d = reverse_dual(9, 1);
  EXPECT_EQ(d.qstar, 1);
  EXPECT_EQ(d.reversed, minus_cf({9}));
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(2, 3), 2);
  EXPECT_EQ(mod_inverse(5, 7), 3);
  EXPECT_EQ(mod_inverse(1, 11), 1);
  EXPECT_EQ(mod_inverse(0, 1), 1);
  EXPECT_THROW(mod_inverse(4, 6), DomainError);
}

TEST(ModInverse, AgreesWithBruteForce) {
  for (int p = 2; p <= 60; ++p)
    for (int a = 1; a < p; ++a) {
      if (std::gcd(a, p) != 1) continue;
      EXPECT_EQ(mod_inverse(a, p), oracle::modular_inverse(a, p)) << a << " mod " << p;
    }
}

TEST(ContinuedFraction, ExpansionsAgreeWithNaiveEvaluation) {
  for (int p = 1; p <= 80; ++p)
    for (int q = 1; q <= 80; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const Rational x(p, q);
      EXPECT_EQ(oracle::evaluate(cf_plus(x).integers(), false), x);
      EXPECT_EQ(oracle::evaluate(cf_minus(x).integers(), true), x);
      EXPECT_TRUE(is_canonical(cf_plus(x)));
      EXPECT_TRUE(is_canonical(cf_minus(x)));
    }
}

TEST(ContinuedFraction, PlusLengthIsEuclidStepCount) {
  for (int p = 2; p <= 100; ++p)
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      std::size_t steps = 0;
      for (int a = p, b = q; b != 0; ++steps) {
        const int r = a % b;
        a = b;
        b = r;
      }
      EXPECT_EQ(cf_plus(Rational(p, q)).size(), steps);
    }
}

TEST(ContinuedFraction, HeadIdentityOnRandomSamples) {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    const int c = 1 + static_cast<int>(rng() % 9);
    const int den = 1 + static_cast<int>(rng() % 20);
    const Rational z(den + 1 + static_cast<int>(rng() % 20), den);
    const Rational y = Rational(c) + z.reciprocal();
    // y/(y-1) = [2 x (c-1), 1+z]^- evaluated by hand from the right.
    Rational x = Rational(1) + z;
    for (int i = 0; i < c - 1; ++i) x = Rational(2) - x.reciprocal();
    EXPECT_EQ(x, y / (y - Rational(1))) << "c=" << c << " z=" << z.str();
  }
}
