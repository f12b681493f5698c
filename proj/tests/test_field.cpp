#include <gtest/gtest.h>

#include <random>
#include <set>

#include "blockforge/error.hpp"
#include "blockforge/finite_field.hpp"
#include "blockforge/matrix.hpp"
#include "blockforge/polynomial.hpp"

using namespace blockforge;

namespace {

// Schoolbook arithmetic on coefficient vectors, independent of the field tables.
std::vector<std::uint64_t> naive_mul(const FieldDescriptor& f, std::vector<std::uint64_t> a,
                                     std::vector<std::uint64_t> b) {
  const auto p = f.p();
  const auto& mod = f.modulus();
  const std::size_t k = f.k();
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    auto c = prod[d];
    for (std::size_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * mod[i]) % p;
  }
  prod.resize(k);
  return prod;
}

FieldElement random_element(const FieldDescriptor& f, std::mt19937_64& rng) {
  return {f, std::uniform_int_distribution<std::uint64_t>(0, f.q() - 1)(rng)};
}

}  // namespace

TEST(Field, CreateIsDeterministic) {
  const auto& a = field_create(3, 4);
  const auto& b = field_create(3, 4);
  EXPECT_EQ(&a, &b);
  EXPECT_EQ(a.q(), 81u);
  EXPECT_TRUE(a.is_conway());
  EXPECT_EQ(a.modulus(), (std::vector<std::uint64_t>{2, 0, 0, 2, 1}));
  const auto& g3 = field_create(3, 1);
  EXPECT_EQ(g3.q(), 3u);
  EXPECT_EQ(g3.modulus().size(), 2u);
  EXPECT_EQ(field_create(7, 2).q(), 49u);
}

TEST(Field, Errors) {
  EXPECT_THROW(field_create(9, 1), InvalidArgument);
  EXPECT_THROW(field_create(3, 0), InvalidArgument);
  EXPECT_THROW(field_create(3, 60), BoundExceeded);
  EXPECT_THROW(field_create(3, 5, 100), BoundExceeded);
}

TEST(Field, FallbackModulusIsLeastPrimitive) {
  // 113 is above the bundled table range.
  const auto& f = field_create(113, 2);
  EXPECT_FALSE(f.is_conway());
  FieldElement g(f, f.generator());
  EXPECT_EQ(g.order(), f.q() - 1);
}

TEST(Field, GeneratorIsPrimitive) {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {2, 8}, {3, 1}, {3, 4}, {5, 2}, {7, 2}, {3, 8}, {2, 30}}) {
    const auto& f = field_create(p, k);
    EXPECT_EQ(f.order(f.generator()), f.q() - 1) << f.label();
  }
}

TEST(Field, PrimitiveRootOfUnity) {
  const auto& f81 = field_create(3, 4);
  auto l = primitive_root_of_unity(f81, 5);
  EXPECT_EQ(l.order(), 5u);
  EXPECT_TRUE(primitive_root_of_unity(field_create(3, 1), 1).is_one());
  const auto& f25 = field_create(5, 2);
  auto x = primitive_root_of_unity(f25, 3);
  // Exhaustive oracle: the cube roots of unity in GF(25).
  std::set<FieldCode> cube_roots;
  for (FieldCode c = 1; c < 25; ++c) {
    FieldElement y(f25, c);
    if ((y * y * y).is_one()) cube_roots.insert(c);
  }
  EXPECT_EQ(cube_roots.size(), 3u);
  EXPECT_TRUE(cube_roots.count(x.code()));
  EXPECT_FALSE(x.is_one());
  EXPECT_THROW(primitive_root_of_unity(f25, 7), InvalidArgument);
}

TEST(Field, ArithmeticMatchesNaiveOracle) {
  std::mt19937_64 rng(7);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 4}, {5, 2}, {2, 8}, {7, 3}, {3, 12}, {101, 3}, {2, 20}, {2, 60}, {2, 63}}) {
    const auto& f = field_create(p, k);
    for (int t = 0; t < 300; ++t) {
      auto a = random_element(f, rng), b = random_element(f, rng);
      EXPECT_EQ((a * b).coefficients(), naive_mul(f, a.coefficients(), b.coefficients())) << f.label();
      auto da = a.coefficients(), db = b.coefficients(), ds = (a + b).coefficients();
      for (unsigned i = 0; i < k; ++i) EXPECT_EQ(ds[i], (da[i] + db[i]) % p);
      EXPECT_EQ((a - b) + b, a);
      if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(Field, AxiomsAndFrobenius) {
  std::mt19937_64 rng(11);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 4}, {5, 3}, {2, 6}, {3, 20}}) {
    const auto& f = field_create(p, k);
    for (int t = 0; t < 200; ++t) {
      auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a + (-a), FieldElement::zero(f));
      EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
      EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
      if (!a.is_zero()) {
        EXPECT_TRUE(a.pow(static_cast<std::int64_t>(f.q() - 1)).is_one());
        EXPECT_EQ(a * a.inverse(), FieldElement::one(f));
      }
    }
  }
}

TEST(Field, EmbeddingsCommute) {
  std::mt19937_64 rng(3);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {3, 2}, {5, 1}, {2, 2}, {7, 1}, {2, 3}}) {
    const auto& f1 = field_create(p, k);
    const auto& f2 = field_create(p, 2 * k);
    const auto& f4 = field_create(p, 4 * k);
    for (int t = 0; t < 100; ++t) {
      auto x = random_element(f1, rng);
      auto y = random_element(f1, rng);
      EXPECT_EQ(embed(embed(x, f2), f4), embed(x, f4));
      EXPECT_EQ(embed(x * y, f4), embed(x, f4) * embed(y, f4));
      EXPECT_EQ(embed(x + y, f2), embed(x, f2) + embed(y, f2));
      EXPECT_EQ(restrict_to(embed(x, f4), f1), x);
    }
  }
}

TEST(Field, ConwayParserRejectsBadLines) {
  auto t = parse_conway_table("# c\n3 2 2 2 1\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].coefficients, (std::vector<std::uint64_t>{2, 2, 1}));
  try {
    parse_conway_table("3 2 2 2 1\n3 2 2 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_conway_table("3 2 2 5 1\n"), ParseError);
  EXPECT_THROW(parse_conway_table("3 2 2 2 2\n"), ParseError);
  EXPECT_GT(bundled_conway_table().size(), 400u);
}

TEST(Polynomial, RootsAndFactorDegrees) {
  const auto& f = field_create(5, 1);
  // (x-1)^2 (x-3) (x^2+2)
  Polynomial p = Polynomial::linear({f, 1}) * Polynomial::linear({f, 1}) * Polynomial::linear({f, 3}) *
                 Polynomial(f, {2, 0, 1});
  auto r = roots(p);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].first.code(), 1u);
  EXPECT_EQ(r[0].second, 2u);
  EXPECT_EQ(r[1].first.code(), 3u);
  EXPECT_EQ(irreducible_factor_degrees(p), (std::vector<unsigned>{1, 2}));
  const auto& f8 = field_create(2, 3);
  Polynomial q(f8, {1, 1, 0, 1});  // x^3 + x + 1 splits in GF(8)
  std::size_t count = 0;
  for (auto& [x, m] : roots(q)) count += m;
  EXPECT_EQ(count, 3u);
}

TEST(Eigenvalues, Examples) {
  const auto& f25 = field_create(5, 2);
  auto l = primitive_root_of_unity(f25, 3);
  Matrix d = Matrix::diagonal(f25, {l.code(), l.inverse().code(), 1});
  auto ev = eigenvalue_multiset(d, f25);
  std::multiset<FieldCode> got, want{l.code(), l.inverse().code(), 1};
  for (auto& e : ev) got.insert(e.code());
  EXPECT_EQ(got, want);

  auto id = eigenvalue_multiset(Matrix::identity(field_create(3, 1), 4), field_create(3, 1));
  EXPECT_EQ(id.size(), 4u);
  for (auto& e : id) EXPECT_TRUE(e.is_one());

  // Companion of x^2 - t x + 1 over GF(5): roots found by direct search in GF(25).
  const auto& f5 = field_create(5, 1);
  FieldElement t = restrict_to(l + l.inverse(), f5);
  Matrix c(f5, 2, {0, f5.neg(1), 1, t.code()});
  EXPECT_EQ(&splitting_field(c), &f25);
  auto cev = eigenvalue_multiset(c, f25);
  std::multiset<FieldCode> oracle;
  for (FieldCode x = 1; x < 25; ++x) {
    FieldElement y(f25, x);
    if ((y * y - embed(t, f25) * y + FieldElement::one(f25)).is_zero()) oracle.insert(x);
  }
  std::multiset<FieldCode> cgot;
  for (auto& e : cev) cgot.insert(e.code());
  EXPECT_EQ(cgot, oracle);
  EXPECT_EQ(cgot, (std::multiset<FieldCode>{l.code(), l.pow(2).code()}));
}

TEST(Eigenvalues, ConjugationInvariant) {
  std::mt19937_64 rng(5);
  const auto& f = field_create(3, 1);
  for (int t = 0; t < 40; ++t) {
    Matrix m(f, 4), a(f, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        m.set(i, j, rng() % 3);
        a.set(i, j, rng() % 3);
      }
    if (a.det() == 0) continue;
    const auto& e = splitting_field(m);
    auto x = eigenvalue_multiset(m, e);
    auto y = eigenvalue_multiset(a * m * a.inverse(), e);
    EXPECT_EQ(x, y);
    EXPECT_EQ(m.characteristic_polynomial(), (a * m * a.inverse()).characteristic_polynomial());
  }
}

TEST(Matrix, CharacteristicPolynomialMatchesDeterminant) {
  // det(cI - M) evaluated pointwise agrees with the Hessenberg characteristic polynomial.
  std::mt19937_64 rng(9);
  const auto& f = field_create(7, 1);
  for (int t = 0; t < 30; ++t) {
    Matrix m(f, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m.set(i, j, rng() % 7);
    auto cp = m.characteristic_polynomial();
    EXPECT_EQ(cp.degree(), 5);
    for (FieldCode c = 0; c < 7; ++c) {
      EXPECT_EQ(cp.evaluate({f, c}).code(), (Matrix::scalar(f, 5, c) - m).det());
    }
  }
}
