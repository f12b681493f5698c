#include <gtest/gtest.h>

#include <array>
#include <set>

#include "blockforge/error.hpp"
#include "blockforge/groups.hpp"

using namespace blockforge;

namespace {

using M2 = std::array<int, 4>;

M2 mul3(const M2& a, const M2& b) {
  return {(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3, (a[2] * b[0] + a[3] * b[2]) % 3,
          (a[2] * b[1] + a[3] * b[3]) % 3};
}

int det3(const M2& a) { return ((a[0] * a[3] - a[1] * a[2]) % 3 + 3) % 3; }

// Plain integer enumeration of 2x2 matrices mod 3 and their conjugacy classes.
std::size_t brute_class_count(bool special) {
  std::vector<M2> group;
  for (int x = 0; x < 81; ++x) {
    M2 m{x % 3, x / 3 % 3, x / 9 % 3, x / 27};
    int d = det3(m);
    if (d != 0 && (!special || d == 1)) group.push_back(m);
  }
  std::set<M2> seen;
  std::size_t classes = 0;
  for (const auto& a : group) {
    if (seen.count(a)) continue;
    ++classes;
    for (const auto& g : group) {
      // g^-1 = adj(g)/det(g); det is its own inverse mod 3
      int d = det3(g);
      M2 inv{g[3] * d % 3, (3 - g[1]) * d % 3, (3 - g[2]) * d % 3, g[0] * d % 3};
      seen.insert(mul3(mul3(g, a), inv));
    }
  }
  return classes;
}

Matrix mat(const FieldDescriptor& f, std::size_t n, std::vector<FieldCode> e) { return Matrix(f, n, std::move(e)); }

}  // namespace

TEST(Groups, OrderFormulas) {
  EXPECT_EQ(group_order(group_create(Family::GL, 2, 3)), Integer(48));
  EXPECT_EQ(group_order(group_create(Family::Sp, 2, 3)), Integer(51840));
  EXPECT_EQ(group_order(group_create(Family::SU, 3, 3)), Integer(6048));
  EXPECT_EQ(group_order(group_create(Family::GU, 3, 3)), Integer(24192));
  EXPECT_EQ(group_order(group_create(Family::SL, 2, 3)), Integer(24));
  EXPECT_EQ(group_order(group_create(Family::SOodd, 2, 3)), Integer(51840));
}

TEST(Groups, CreateValidates) {
  EXPECT_THROW(group_create(Family::GL, 2, 4), InvalidArgument);
  EXPECT_THROW(group_create(Family::GL, 2, 6), InvalidArgument);
  EXPECT_THROW(group_create(Family::GL, 1, 3), InvalidArgument);
  EXPECT_THROW(group_create(Family::SOplus, 3, 3), InvalidArgument);
  auto gu = group_create(Family::GU, 3, 3);
  EXPECT_EQ(gu.entry->q(), 9u);
  EXPECT_EQ(gu.dim, 3u);
  auto som = group_create(Family::SOminus, 4, 3);
  EXPECT_EQ(som.dim, 8u);
  EXPECT_TRUE(som.twist.has_value());
  EXPECT_EQ(som.label(), "SO8-(3)");
  EXPECT_EQ(group_create(Family::Sp, 2, 3).label(), "Sp4(3)");
}

TEST(Groups, MembershipExamples) {
  auto sp = group_create(Family::Sp, 2, 3);
  EXPECT_TRUE(contains(sp, form_i(*sp.entry, 2)));
  auto sl = group_create(Family::SL, 2, 3);
  EXPECT_FALSE(contains(sl, Matrix::diagonal(*sl.entry, {2, 1})));
  auto so = group_create(Family::SOodd, 2, 3);
  EXPECT_TRUE(contains(so, form_j(*so.entry, 5)));
  EXPECT_THROW(contains(so, Matrix::identity(*so.entry, 4)), InvalidArgument);
  auto gu = group_create(Family::GU, 2, 3);
  EXPECT_THROW(contains(gu, Matrix::identity(field_create(3, 1), 2)), InvalidArgument);
}

TEST(Groups, BruteForceClassCounts) {
  auto sl = conjugacy_data(group_create(Family::SL, 2, 3));
  auto gl = conjugacy_data(group_create(Family::GL, 2, 3));
  EXPECT_EQ(sl->class_count(), brute_class_count(true));
  EXPECT_EQ(gl->class_count(), brute_class_count(false));
  EXPECT_EQ(sl->class_count(), 7u);
  EXPECT_EQ(gl->class_count(), 8u);
}

TEST(Groups, EnumerationMatchesOrderFormula) {
  for (auto [fam, n, q] : std::vector<std::tuple<Family, unsigned, std::uint64_t>>{
           {Family::GL, 3, 3}, {Family::SL, 2, 5}, {Family::GU, 2, 3}, {Family::SU, 3, 3},
           {Family::GU, 3, 3}, {Family::Sp, 2, 3}, {Family::SOodd, 2, 3}}) {
    auto spec = group_create(fam, n, q);
    auto g = conjugacy_data(spec);
    EXPECT_EQ(Integer(static_cast<std::int64_t>(g->order())), group_order(spec)) << spec.label();
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < g->class_count(); ++c) total += g->class_size(c);
    EXPECT_EQ(total, g->order());
    EXPECT_EQ(g->class_order(0), 1u);
    EXPECT_TRUE(g->representative(0).is_identity());
  }
  EXPECT_EQ(conjugacy_data(group_create(Family::GL, 3, 3))->class_count(), 24u);
}

TEST(Groups, ClosedUnderProducts) {
  auto spec = group_create(Family::GU, 2, 3);
  auto g = conjugacy_data(spec);
  for (std::size_t i = 0; i < g->order(); i += 7)
    for (std::size_t j = 0; j < g->order(); j += 5) EXPECT_TRUE(contains(spec, g->element(i) * g->element(j)));
  EXPECT_THROW(EnumeratedGroup(group_create(Family::GL, 4, 9), 1000), Unenumerable);
}

TEST(Groups, ClassDataConsistency) {
  auto g = conjugacy_data(group_create(Family::SL, 2, 5));
  for (std::size_t c = 0; c < g->class_count(); ++c) {
    const auto& r = g->representative(c);
    EXPECT_EQ(element_order(r), g->class_order(c));
    EXPECT_EQ(g->class_of(r.inverse()), g->inverse_class(c));
    EXPECT_EQ(g->power_class(c, g->class_order(c) + 1), c);
    EXPECT_EQ(g->power_class(c, g->class_order(c)), 0u);
    for (std::size_t m : g->class_members(c)) EXPECT_EQ(g->key(r) <= g->key(g->element(m)), true);
  }
  EXPECT_EQ(g->exponent(), 60u);
}

TEST(Groups, ElementOrder) {
  const auto& f3 = field_create(3, 1);
  EXPECT_EQ(element_order(mat(f3, 2, {1, 1, 0, 1})), 3u);
  EXPECT_EQ(element_order(mat(f3, 2, {0, 2, 1, 0})), 4u);
  EXPECT_EQ(element_order(Matrix::identity(f3, 4)), 1u);
  // companion of Phi_5 over GF(3) has order 5
  EXPECT_EQ(element_order(mat(f3, 4, {0, 0, 0, 2, 1, 0, 0, 2, 0, 1, 0, 2, 0, 0, 1, 2})), 5u);
  const auto& f81 = field_create(3, 4);
  FieldCode g = f81.generator();
  EXPECT_EQ(element_order(Matrix::diagonal(f81, {g, 1})), 80u);
  EXPECT_EQ(element_order(Matrix::diagonal(f81, {f81.pow(g, 16), 1, f81.pow(g, 64)})), 5u);
  Matrix jordan = mat(f3, 4, {1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1});
  EXPECT_EQ(element_order(jordan), 9u);
}

TEST(Groups, Centers) {
  EXPECT_EQ(center_elements(group_create(Family::GL, 3, 7)).size(), 6u);
  EXPECT_EQ(center_elements(group_create(Family::SL, 3, 7)).size(), 3u);
  EXPECT_EQ(center_elements(group_create(Family::GU, 3, 5)).size(), 6u);
  EXPECT_EQ(center_elements(group_create(Family::SU, 3, 5)).size(), 3u);
  EXPECT_EQ(center_elements(group_create(Family::Sp, 2, 3)).size(), 2u);
  EXPECT_EQ(center_elements(group_create(Family::SOodd, 2, 3)).size(), 1u);
  EXPECT_EQ(center_elements(group_create(Family::SOminus, 4, 3)).size(), 2u);
  auto sl = conjugacy_data(group_create(Family::SL, 2, 5));
  std::size_t singleton = 0;
  for (std::size_t c = 0; c < sl->class_count(); ++c) singleton += sl->class_size(c) == 1;
  EXPECT_EQ(singleton, 2u);
}

TEST(Groups, DerivedSubgroup) {
  auto gl = group_create(Family::GL, 2, 3);
  EXPECT_TRUE(in_derived_subgroup(gl, mat(*gl.entry, 2, {1, 1, 0, 1})).member);
  EXPECT_FALSE(in_derived_subgroup(gl, Matrix::diagonal(*gl.entry, {2, 1})).member);
  auto so = group_create(Family::SOodd, 2, 3);
  EXPECT_THROW(in_derived_subgroup(so, Matrix::diagonal(*so.entry, {2, 1, 1, 1, 2})), Undecidable);
  EXPECT_TRUE(in_derived_subgroup(group_create(Family::Sp, 2, 3), form_i(*gl.entry, 2)).member);
  // SL2(3)' = Q8 has 8 elements
  auto sl = group_create(Family::SL, 2, 3);
  auto g = conjugacy_data(sl);
  std::size_t members = 0;
  for (std::size_t i = 0; i < g->order(); ++i) members += in_derived_subgroup(sl, g->element(i)).member;
  EXPECT_EQ(members, 8u);
}

TEST(Groups, ConjugacyAgreesWithEnumeration) {
  for (auto [fam, n, q] : std::vector<std::tuple<Family, unsigned, std::uint64_t>>{
           {Family::GL, 2, 3}, {Family::SL, 2, 3}, {Family::GU, 2, 3}, {Family::SL, 2, 5}}) {
    auto spec = group_create(fam, n, q);
    auto g = conjugacy_data(spec);
    ConjugacyOptions no_enum;
    no_enum.allow_enumeration = false;
    for (std::size_t i = 0; i < g->order(); i += 3) {
      for (std::size_t c = 0; c < g->class_count(); ++c) {
        const auto& a = g->element(i);
        const auto& b = g->representative(c);
        auto r = is_conjugate(spec, a, b, no_enum);
        bool same = g->class_of_index(i) == c;
        if (auto* w = std::get_if<ConjugacyWitness>(&r)) {
          EXPECT_TRUE(same);
          EXPECT_TRUE(verify_witness(spec, a, b, w->conjugator));
        } else {
          EXPECT_FALSE(same) << spec.label() << " " << i << " " << c;
          EXPECT_TRUE(std::holds_alternative<NotConjugate>(r));
        }
      }
    }
  }
}

TEST(Groups, EmbeddingsLandInTheGroups) {
  const auto& f = field_create(3, 1);
  Matrix g = mat(f, 2, {1, 1, 2, 0});
  EXPECT_TRUE(contains(group_create(Family::Sp, 2, 3), embed_phi(g)));
  EXPECT_TRUE(contains(group_create(Family::SOodd, 2, 3), embed_psi_odd(g)));
  Matrix g3 = mat(f, 3, {1, 1, 0, 0, 1, 0, 2, 0, 1});
  EXPECT_TRUE(contains(group_create(Family::SOplus, 4, 3), embed_phi(mat(f, 4, {1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2}))));
  auto som = group_create(Family::SOminus, 4, 3);
  EXPECT_TRUE(contains(som, embed_psi_minus(g3).embedded(*som.entry)));
}
