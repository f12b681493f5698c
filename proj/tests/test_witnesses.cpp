#include <gtest/gtest.h>

#include <json.hpp>

#include <random>
#include <set>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"
#include "blockforge/witnesses.hpp"

using namespace blockforge;

namespace {

// Order by repeated multiplication.
std::uint64_t naive_order(const Matrix& m, std::uint64_t limit = 100000) {
  Matrix x = m;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (x.is_identity()) return k;
    x = x * m;
  }
  return 0;
}

bool is_witness(const Construction& c) { return std::holds_alternative<Witness>(c); }

const std::vector<std::uint64_t> kGridQ{3, 5, 7, 9};

}  // namespace

TEST(TypeA, ExceptionsReturnNoWitness) {
  EXPECT_FALSE(is_witness(construct_typeA(3, 3, 1)));
  EXPECT_FALSE(is_witness(construct_typeA(2, 3, -1)));
  EXPECT_TRUE(is_witness(construct_typeA(4, 3, 1)));
  EXPECT_THROW(construct_typeA(1, 5, 1), InvalidArgument);
  EXPECT_THROW(construct_typeA(3, 4, 1), InvalidArgument);
  EXPECT_THROW(construct_typeA(3, 5, 0), InvalidArgument);
}

TEST(TypeA, GL2Of5HasOrderThreeEigenvalues) {
  auto w = std::get<Witness>(construct_typeA(2, 5, 1));
  const auto& f5 = field_create(5, 1);
  ASSERT_EQ(&w.element.field(), &f5);
  EXPECT_NE(w.element.det(), 0u);
  EXPECT_EQ(naive_order(w.element), 3u);
  // Roots of x^2 - tr x + det, found by scanning GF(25).
  const auto& f25 = field_create(5, 2);
  FieldElement tr = embed(FieldElement(f5, f5.add(w.element.at(0, 0), w.element.at(1, 1))), f25);
  FieldElement det = embed(FieldElement(f5, w.element.det()), f25);
  std::multiset<std::uint64_t> orders;
  for (FieldCode c = 1; c < 25; ++c) {
    FieldElement x(f25, c);
    if ((x * x - tr * x + det).is_zero()) orders.insert(naive_order(Matrix::scalar(f25, 1, c)));
  }
  EXPECT_EQ(orders, (std::multiset<std::uint64_t>{3, 3}));
}

TEST(TypeA, QEquals3UsesOrderFive) {
  for (int eps : {1, -1}) {
    for (unsigned n : {4u, 5u, 6u}) {
      auto w = std::get<Witness>(construct_typeA(n, 3, eps));
      EXPECT_TRUE(contains(w.spec, w.element)) << w.spec.label();
      EXPECT_EQ(naive_order(w.element), 5u) << w.spec.label();
      // Four eigenvalues of order 5 and n-4 ones: (s - 1) has rank 4.
      EXPECT_EQ((w.element - Matrix::identity(w.element.field(), n)).rank(), 4u);
    }
  }
}

TEST(TypeA, WitnessesAreOddOrderMembers) {
  for (int eps : {1, -1})
    for (unsigned n = 2; n <= 6; ++n)
      for (auto q : kGridQ) {
        auto c = construct_typeA(n, q, eps);
        if (!is_witness(c)) continue;
        const auto& w = std::get<Witness>(c);
        EXPECT_TRUE(contains(w.spec, w.element)) << w.spec.label();
        auto o = naive_order(w.element);
        EXPECT_GT(o, 1u) << w.spec.label();
        EXPECT_EQ(o % 2, 1u) << w.spec.label();
        EXPECT_EQ(w.element.det(), 1u) << w.spec.label();
        for (auto& x : w.inverters) EXPECT_TRUE(x * w.element * x.inverse() == w.element.inverse());
      }
}

TEST(WitnessGrid, ExceptionSetsAreExact) {
  std::set<std::pair<unsigned, long>> none, b_fails;
  for (int eps : {1, -1})
    for (unsigned n = 2; n <= 6; ++n)
      for (auto q : kGridQ) {
        const long eq = eps * static_cast<long>(q);
        auto c = construct_typeA(n, q, eps);
        if (!is_witness(c)) {
          none.insert({n, eq});
          continue;
        }
        auto cert = certify(std::get<Witness>(c));
        EXPECT_TRUE(cert.a.passed) << cert.spec.label();
        EXPECT_TRUE(cert.c.passed) << cert.spec.label();
        if (!cert.b.passed) b_fails.insert({n, eq});
      }
  EXPECT_EQ(none, (std::set<std::pair<unsigned, long>>{{2, 3}, {2, -3}, {3, 3}, {3, -3}}));
  EXPECT_EQ(b_fails, (std::set<std::pair<unsigned, long>>{{3, -5}, {3, 7}}));
}

TEST(WitnessGrid, ClassicalTypesPassAllConditions) {
  std::vector<Witness> ws;
  for (unsigned n = 2; n <= 6; ++n)
    for (auto q : kGridQ) {
      ws.push_back(construct_typeC_Sp(n, q));
      ws.push_back(construct_typeB_SO(n, q));
    }
  for (int eps : {1, -1})
    for (unsigned n = 4; n <= 5; ++n)
      for (auto q : kGridQ) ws.push_back(construct_typeD(n, q, eps));
  for (const auto& w : ws) {
    EXPECT_TRUE(contains(w.spec, w.element)) << w.spec.label();
    auto o = naive_order(w.element);
    EXPECT_TRUE(o > 1 && o % 2 == 1) << w.spec.label();
    auto cert = certify(w);
    EXPECT_EQ(cert.conclusion, Conclusion::Quotient) << w.spec.label();
    auto re = recheck_certificate(certificate_json(cert));
    EXPECT_TRUE(re.ok) << w.spec.label() << ": " << (re.messages.empty() ? "" : re.messages[0]);
  }
}

TEST(Special, Sp4Of3InvertedByI4) {
  const auto& f3 = field_create(3, 1);
  Matrix s = sp4_3_special();
  Matrix i4 = form_i(f3, 2);
  EXPECT_EQ(naive_order(s), 5u);
  EXPECT_TRUE(s.transpose() * i4 * s == i4);
  EXPECT_TRUE(i4 * s * i4.inverse() == s.inverse());

  // Least symmetric order-5 symplectic matrix, by scanning all 3^10 symmetric matrices.
  std::optional<Matrix> least;
  for (std::uint64_t code = 0; code < 59049 && !least; ++code) {
    Matrix m(f3, 4);
    std::uint64_t c = code;
    std::vector<FieldCode> free(10);
    for (int k = 9; k >= 0; --k) {
      free[k] = c % 3;
      c /= 3;
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        m.set(i, j, free[idx]);
        m.set(j, i, free[idx]);
        ++idx;
      }
    if (m.det() != 0 && m.transpose() * i4 * m == i4 && naive_order(m, 10) == 5) least = m;
  }
  ASSERT_TRUE(least);
  EXPECT_TRUE(*least == s);

  // The torus model diag(l, l^3, l^2, l^4) over GF(81).
  const auto& f81 = field_create(3, 4);
  FieldElement l = primitive_root_of_unity(f81, 5);
  Matrix d = Matrix::diagonal(f81, {l.code(), l.pow(3).code(), l.pow(2).code(), l.pow(4).code()});
  Matrix i81 = form_i(f81, 2);
  EXPECT_TRUE(d.transpose() * i81 * d == i81);
  EXPECT_TRUE(i81 * d * i81.inverse() == d.inverse());
  EXPECT_TRUE(s.embedded(f81).characteristic_polynomial() == d.characteristic_polynomial());

  auto w = construct_typeC_Sp(2, 3);
  auto cert = certify(w);
  ASSERT_TRUE(cert.a.reality);
  auto& rw = std::get<ConjugacyWitness>(*cert.a.reality);
  EXPECT_TRUE(rw.conjugator == i4);
  EXPECT_EQ(cert.a.order, 5u);
}

TEST(Special, SO5Of3InvertedByJ5) {
  const auto& f3 = field_create(3, 1);
  Matrix s = so5_3_special();
  Matrix j5 = form_j(f3, 5);
  EXPECT_EQ(naive_order(s), 5u);
  EXPECT_EQ(s.det(), 1u);
  EXPECT_TRUE(s.transpose() * j5 * s == j5);
  EXPECT_TRUE(j5 * s * j5 == s.inverse());

  const auto& f81 = field_create(3, 4);
  FieldElement l = primitive_root_of_unity(f81, 5);
  Matrix d = Matrix::diagonal(f81, {l.code(), l.pow(3).code(), 1, l.pow(2).code(), l.pow(4).code()});
  Matrix j81 = form_j(f81, 5);
  EXPECT_TRUE(d.transpose() * j81 * d == j81);
  EXPECT_TRUE(j81 * d * j81 == d.inverse());
  EXPECT_TRUE(s.embedded(f81).characteristic_polynomial() == d.characteristic_polynomial());

  auto cert = certify(construct_typeB_SO(2, 3));
  ASSERT_TRUE(cert.a.reality);
  EXPECT_TRUE(std::get<ConjugacyWitness>(*cert.a.reality).conjugator == j5);
  EXPECT_TRUE(cert.b.checks.empty());
  EXPECT_TRUE(cert.b.passed);
  EXPECT_TRUE(cert.c.passed);
}

TEST(Special, RankThreeCornerEmbeddings) {
  auto sp = construct_typeC_Sp(3, 3);
  EXPECT_EQ(sp.spec.label(), "Sp6(3)");
  EXPECT_EQ(naive_order(sp.element), 5u);
  auto so = construct_typeB_SO(3, 3);
  EXPECT_EQ(so.spec.label(), "SO7(3)");
  EXPECT_EQ(naive_order(so.element), 5u);
  EXPECT_EQ(certify(sp).conclusion, Conclusion::Quotient);
  EXPECT_EQ(certify(so).conclusion, Conclusion::Quotient);
}

TEST(Special, SO8MinusOf3) {
  auto w = construct_typeD(4, 3, -1);
  EXPECT_EQ(w.spec.label(), "SO8-(3)");
  EXPECT_TRUE(contains(w.spec, w.element));
  EXPECT_EQ(naive_order(w.element), 5u);
  auto cert = certify(w);
  EXPECT_TRUE(cert.a.passed);
  EXPECT_EQ(std::get<ConjugacyWitness>(*cert.a.reality).method, "supplied conjugator");
  EXPECT_EQ(cert.conclusion, Conclusion::Quotient);
}

TEST(Conditions, AExamples) {
  auto spec = group_create(Family::Sp, 2, 3);
  const auto& f = *spec.entry;
  auto id = check_condition_A(spec, Matrix::identity(f, 4));
  EXPECT_FALSE(id.passed);
  EXPECT_FALSE(id.nontrivial);
  auto neg = check_condition_A(spec, Matrix::scalar(f, 4, f.neg(1)));
  EXPECT_FALSE(neg.passed);
  EXPECT_FALSE(neg.odd);
  EXPECT_EQ(neg.order, 2u);
  EXPECT_THROW(check_condition_A(spec, Matrix::scalar(f, 4, 2) + Matrix::identity(f, 4)), InvalidArgument);
}

TEST(Conditions, BExamples) {
  auto sp = construct_typeC_Sp(2, 3);
  auto b = check_condition_B(sp.spec, sp.element);
  ASSERT_EQ(b.checks.size(), 1u);
  EXPECT_EQ(b.checks[0].verdict, CentralVerdict::OrderDiffers);
  EXPECT_TRUE(b.passed);

  // GL3(7), s = diag(l, l^-1, 1) with l of order 3, z = l*id.
  auto spec = group_create(Family::GL, 3, 7);
  const auto& f = *spec.entry;
  FieldCode l = 2;  // 2^3 = 8 = 1 mod 7
  Matrix s = Matrix::diagonal(f, {l, f.inv(l), 1});
  auto r = check_condition_B(spec, s);
  EXPECT_FALSE(r.passed);
  bool found = false;
  for (auto& c : r.checks) {
    if (c.z == Matrix::scalar(f, 3, l)) {
      EXPECT_EQ(c.verdict, CentralVerdict::Conjugate);
      ASSERT_TRUE(c.conjugator);
      EXPECT_TRUE(*c.conjugator * s * c.conjugator->inverse() == s * c.z);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(r.checks.size(), 5u);
}

TEST(Conditions, CExamples) {
  auto gl = std::get<Witness>(construct_typeA(3, 5, 1));
  auto c = check_condition_C(gl.spec, gl.element);
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.method, "determinant");
  auto spec = gl.spec;
  Matrix d = Matrix::diagonal(*spec.entry, {2, 1, 1});
  EXPECT_FALSE(check_condition_C(spec, d).passed);
  auto sp = construct_typeC_Sp(2, 5);
  EXPECT_TRUE(check_condition_C(sp.spec, sp.element).passed);
  auto so = construct_typeB_SO(2, 3);
  auto cs = check_condition_C(so.spec, so.element);
  EXPECT_TRUE(cs.passed);
  EXPECT_EQ(cs.method, "odd order in index-2 subgroup");
  EXPECT_TRUE(check_condition_C(so.spec, Matrix::identity(*so.spec.entry, 5)).passed);
}

TEST(Certify, Conclusions) {
  EXPECT_EQ(certify(construct_typeC_Sp(2, 3)).conclusion, Conclusion::Quotient);
  auto gl = std::get<Witness>(construct_typeA(3, 7, 1));
  auto cert = certify(gl);
  EXPECT_EQ(cert.conclusion, Conclusion::Group);
  auto spec = group_create(Family::Sp, 2, 5);
  EXPECT_EQ(certify(spec, Matrix::identity(*spec.entry, 4)).conclusion, Conclusion::Failed);
}

TEST(Certify, JsonAndRecheck) {
  auto cert = certify(std::get<Witness>(construct_typeA(3, 7, 1)));
  auto text = certificate_json(cert);
  auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["group"]["family"], "GL");
  EXPECT_EQ(j["group"]["eps"], 1);
  EXPECT_EQ(j["element"].size(), 9u);
  EXPECT_EQ(j["conclusion"], "group");
  EXPECT_TRUE(j["conditions"]["A"]["passed"].get<bool>());
  EXPECT_FALSE(j["conditions"]["B"]["passed"].get<bool>());
  EXPECT_TRUE(recheck_certificate(text).ok);

  auto bad_conclusion = j;
  bad_conclusion["conclusion"] = "quotient";
  EXPECT_FALSE(recheck_certificate(bad_conclusion.dump()).ok);

  auto bad_conj = j;
  bad_conj["conditions"]["A"]["reality"]["conjugator"] = j["element"];
  EXPECT_FALSE(recheck_certificate(bad_conj.dump()).ok);

  auto bad_order = j;
  bad_order["conditions"]["A"]["order"] = 9;
  EXPECT_FALSE(recheck_certificate(bad_order.dump()).ok);

  auto dropped = j;
  dropped["conditions"]["B"]["checks"].erase(0);
  EXPECT_FALSE(recheck_certificate(dropped.dump()).ok);

  EXPECT_THROW(recheck_certificate("{"), ParseError);
  EXPECT_THROW(recheck_certificate("{}"), ParseError);
}

TEST(Embeddings, FormConditionsOnRandomElements) {
  std::mt19937_64 rng(17);
  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{4, 3}, {4, 5}, {5, 9}}) {
    auto sp = group_create(Family::Sp, n, q);
    auto so_odd = group_create(Family::SOodd, n, q);
    auto so_plus = group_create(Family::SOplus, n, q);
    auto so_minus = group_create(Family::SOminus, n + 1, q);
    const auto& f = *sp.base;
    for (int t = 0; t < 100; ++t) {
      Matrix g(f, n);
      do {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) g.set(i, j, rng() % f.q());
      } while (g.det() == 0);
      Matrix a = embed_phi(g);
      EXPECT_TRUE(a.transpose() * sp.form * a == sp.form);
      EXPECT_TRUE(contains(so_plus, a));
      Matrix b = embed_psi_odd(g);
      EXPECT_TRUE(b.transpose() * so_odd.form * b == so_odd.form);
      EXPECT_EQ(b.det(), 1u);
      EXPECT_TRUE(contains(so_minus, embed_psi_minus(g).embedded(*so_minus.entry)));
    }
  }
}
