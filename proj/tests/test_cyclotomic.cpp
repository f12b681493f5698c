#include <gtest/gtest.h>

#include <random>

#include "blockforge/cyclotomic.hpp"
#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"
#include "naive_cyclotomic.hpp"

using namespace blockforge;

TEST(CycInt, ConjugateExamples) {
  EXPECT_EQ(cyc_conjugate(CycInt(3)), CycInt(3));
  CycInt z3 = CycInt::zeta(3);
  CycInt expected = CycInt::from_coefficients(3, {Integer(-1), Integer(-1)});
  EXPECT_EQ(cyc_conjugate(z3), expected);
  EXPECT_EQ(cyc_conjugate(z3).coefficients(), expected.coefficients());
  CycInt r = CycInt::zeta(5, 1) + CycInt::zeta(5, 4);
  EXPECT_EQ(cyc_conjugate(r), r);
  EXPECT_EQ(cyc_conjugate(cyc_conjugate(CycInt::zeta(12, 5))), CycInt::zeta(12, 5));
}

TEST(CycInt, LiftIsCompatible) {
  CycInt a = CycInt::zeta(3) + CycInt(2);
  CycInt b = CycInt::zeta(4);
  EXPECT_EQ((a * b).conductor(), 12u);
  EXPECT_EQ(a.lifted(12), a);
  EXPECT_EQ(a.lifted(12) * b.lifted(12), a * b);
  EXPECT_EQ(CycInt::zeta(4) * CycInt::zeta(4), CycInt(-1));
  EXPECT_TRUE((CycInt::zeta(4) * CycInt::zeta(4)).is_rational());
  // 1 + z + ... + z^(n-1) = 0
  CycInt s;
  for (int i = 0; i < 15; ++i) s += CycInt::zeta(15, i);
  EXPECT_TRUE(s.is_zero());
}

TEST(CycInt, MatchesNaiveOracle) {
  std::mt19937_64 rng(2024);
  const std::vector<std::uint64_t> conductors{3, 4, 5, 7, 8, 9, 12, 15, 20, 21, 24, 33, 40, 56, 105};
  for (int t = 0; t < 10000; ++t) {
    std::uint64_t n = conductors[rng() % conductors.size()];
    std::size_t ph = euler_phi(n);
    std::vector<std::int64_t> a(ph), b(ph);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 41) - 20;
    for (auto& x : b) x = static_cast<std::int64_t>(rng() % 41) - 20;
    CycInt ca = naive::to_cyc(n, a), cb = naive::to_cyc(n, b);
    ASSERT_EQ(naive::coeffs(ca * cb, n), naive::mul(n, a, b)) << n;
    ASSERT_EQ(naive::coeffs(ca + cb, n), naive::add(a, b)) << n;
  }
}

TEST(CycInt, GaloisIsRingMap) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t n = 24;
    std::vector<std::int64_t> a(8), b(8);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 7) - 3;
    for (auto& x : b) x = static_cast<std::int64_t>(rng() % 7) - 3;
    CycInt ca = naive::to_cyc(n, a), cb = naive::to_cyc(n, b);
    for (std::int64_t k : {5, 7, 11, 13, -1}) {
      EXPECT_EQ((ca * cb).galois(k), ca.galois(k) * cb.galois(k));
      EXPECT_EQ((ca + cb).galois(k), ca.galois(k) + cb.galois(k));
    }
  }
  EXPECT_THROW(CycInt::zeta(6).galois(3), InvalidArgument);
}

TEST(CycInt, ExactDivision) {
  CycInt x = CycInt::zeta(7) * CycInt(6) + CycInt(3);
  EXPECT_EQ(x.divexact(Integer(3)), CycInt::zeta(7) * CycInt(2) + CycInt(1));
  EXPECT_FALSE(x.divisible_by(Integer(2)));
  EXPECT_THROW(x.divexact(Integer(2)), IntegrityError);
}

TEST(CycInt, BigCoefficients) {
  CycInt x = CycInt::zeta(5) * CycInt(Integer::parse("123456789012345678901234567890"));
  CycInt y = x * x;
  EXPECT_EQ(y, CycInt::zeta(5, 2) * CycInt(Integer::parse("15241578753238836750495351562536198787501905199875019052100")));
}

TEST(IdealReduction, Examples) {
  IdealReduction r(12);
  EXPECT_TRUE(reduce_mod2(CycInt(2), r).is_zero());
  EXPECT_TRUE(reduce_mod2(CycInt::zeta(4), r).is_one());
  EXPECT_EQ(r.target().q(), 4u);
  auto z3 = reduce_mod2(CycInt::zeta(3), r);
  EXPECT_TRUE((z3 * z3 + z3 + FieldElement::one(r.target())).is_zero());
  EXPECT_FALSE(z3.is_one());
  EXPECT_THROW(reduce_mod2(CycInt::zeta(5), r), InvalidArgument);
  EXPECT_TRUE(reduce_mod2(CycInt(7), IdealReduction(1)).is_one());
}

TEST(IdealReduction, IsHomomorphismForEveryFactor) {
  std::mt19937_64 rng(99);
  for (std::uint64_t n : {7u, 21u, 24u, 35u, 56u, 120u}) {
    for (std::size_t idx = 0; idx < IdealReduction::factor_count(n); ++idx) {
      IdealReduction r(n, 2, idx);
      EXPECT_EQ(embed(r.factor(), r.target()).evaluate(r.zeta_image().pow(static_cast<std::int64_t>(1 << valuation(n, 2)))).code(), 0u);
      for (int t = 0; t < 60; ++t) {
        std::size_t ph = euler_phi(n);
        std::vector<std::int64_t> a(ph), b(ph);
        for (auto& x : a) x = static_cast<std::int64_t>(rng() % 9) - 4;
        for (auto& x : b) x = static_cast<std::int64_t>(rng() % 9) - 4;
        CycInt ca = naive::to_cyc(n, a), cb = naive::to_cyc(n, b);
        EXPECT_EQ(r.reduce(ca * cb), r.reduce(ca) * r.reduce(cb));
        EXPECT_EQ(r.reduce(ca + cb), r.reduce(ca) + r.reduce(cb));
      }
    }
  }
  EXPECT_EQ(IdealReduction::factor_count(7), 2u);
  EXPECT_EQ(IdealReduction::factor_count(21), 2u);
}

TEST(IdealReduction, OddPrimes) {
  IdealReduction r(12, 3);
  EXPECT_TRUE(r.reduce(CycInt(3)).is_zero());
  EXPECT_TRUE(r.reduce(CycInt::zeta(3)).is_one());
  EXPECT_EQ(r.zeta_image().pow(4).code(), 1u);
}
