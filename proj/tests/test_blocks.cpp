#include <gtest/gtest.h>

#include <json.hpp>
#include <map>
#include <sstream>

#include "blockforge/blocks.hpp"
#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"
#include "fixtures_path.hpp"

using namespace blockforge;

namespace {

const char* kQ8 =
    "GROUP Q8\nORDER 8\nEXPONENT 4\nNCLASSES 5\nSIZES 1 1 2 2 2\nORDERS 1 2 4 4 4\nINVERSE 1 2 3 4 5\n"
    "CHAR 1 1 1 1 1\nCHAR 1 1 1 -1 -1\nCHAR 1 1 -1 1 -1\nCHAR 1 1 -1 -1 1\nCHAR 2 -2 0 0 0\n";

// Structural invariants every partition must satisfy.
void check_partition(const CharacterTable& t, const BlockPartition& p) {
  std::vector<int> seen(t.class_count(), 0);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    for (std::size_t chi : p.blocks[b].characters) {
      ++seen[chi];
      EXPECT_EQ(p.block_of[chi], b);
    }
    if (p.blocks[b].defect == 0) {
      ASSERT_EQ(p.blocks[b].characters.size(), 1u);
      const Integer& d = t.degree(p.blocks[b].characters[0]);
      Integer full = pow(Integer(static_cast<std::int64_t>(p.ell)), p.order_valuation);
      EXPECT_TRUE(d.divisible_by(full));
    }
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_EQ(p.block_of[0], p.principal);
  auto pi = conj_permutation(t);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    std::size_t image = p.block_of[pi[p.blocks[b].characters[0]]];
    for (std::size_t chi : p.blocks[b].characters) EXPECT_EQ(p.block_of[pi[chi]], image);
  }
  auto rb = real_blocks(p, t);
  EXPECT_NE(std::find(rb.begin(), rb.end(), p.principal), rb.end());
}

void check_independence(const CharacterTable& t) {
  auto base = block_partition(t, 2, 0);
  const std::size_t n = ideal_choice_count(t, 2);
  for (std::size_t f = 1; f < n; ++f) {
    auto other = block_partition(t, 2, f);
    EXPECT_EQ(other.block_of, base.block_of) << t.label << " factor " << f;
  }
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) out.push_back(x + 1);
  return out;
}

}  // namespace

TEST(Blocks, CentralCharacters) {
  auto t = compute_table(group_create(Family::SL, 2, 3));
  auto omega = central_characters(t);
  for (std::size_t k = 0; k < t.class_count(); ++k) EXPECT_EQ(omega[0][k], CycInt(t.sizes[k]));
  for (std::size_t i = 0; i < t.class_count(); ++i) EXPECT_EQ(omega[i][0], CycInt(1));
  std::size_t chi3 = t.class_count() - 1;
  ASSERT_EQ(t.degree(chi3), Integer(3));
  for (std::size_t k = 0; k < t.class_count(); ++k) {
    if (t.sizes[k] != Integer(4)) continue;
    EXPECT_EQ(omega[chi3][k] * CycInt(3), CycInt(4) * t.values[chi3][k]);
  }
}

TEST(Blocks, SL23HasOneBlock) {
  auto t = compute_table(group_create(Family::SL, 2, 3));
  auto p = block_partition(t, 2);
  EXPECT_EQ(p.blocks.size(), 1u);
  check_partition(t, p);
  check_independence(t);
  EXPECT_FALSE(has_nonprincipal_real_2block(t).found);
}

TEST(Blocks, TrivialGroup) {
  auto t = compute_table(class_structure_from_cayley("1", {{0}}));
  auto p = block_partition(t, 2);
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_EQ(p.blocks[0].defect, 0u);
}

TEST(Blocks, ExceptionalTablesHaveOnlyDefectZeroNonprincipal) {
  for (auto fam : {Family::SL, Family::SU}) {
    auto t = compute_table(group_create(fam, 3, 3));
    auto p = block_partition(t, 2);
    check_partition(t, p);
    check_independence(t);
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      if (b == p.principal) continue;
      EXPECT_EQ(p.blocks[b].defect, 0u);
      EXPECT_FALSE(p.blocks[b].real);
    }
    EXPECT_EQ(real_blocks(p, t), std::vector<std::size_t>{p.principal});
    EXPECT_FALSE(has_nonprincipal_real_2block(t).found);
  }
  auto l33 = compute_table(group_create(Family::SL, 3, 3));
  auto p = block_partition(l33, 2);
  ASSERT_EQ(p.blocks.size(), 5u);
  EXPECT_EQ(p.blocks[0].defect, 4u);
  EXPECT_EQ(block_partition(compute_table(group_create(Family::SU, 3, 3)), 2).blocks.size(), 3u);
}

TEST(Blocks, GLBlocksMatchSemisimpleClasses) {
  for (unsigned n : {2u, 3u}) {
    auto spec = group_create(Family::GL, n, 3);
    auto g = conjugacy_data(spec);
    auto t = compute_table(spec);
    auto p = block_partition(t, 2);
    check_partition(t, p);
    check_independence(t);
    EXPECT_EQ(p.blocks.size(), count_classes_prime_to(*g, 6)) << spec.label();
    EXPECT_EQ(real_blocks(p, t).size(), 1u);
  }
}

TEST(Blocks, FixtureBlockCounts) {
  const std::map<std::string, std::pair<std::size_t, std::vector<std::size_t>>> expected{
      {"m11.ctx", {3, {1}}},   {"m22.ctx", {1, {1}}},    {"2m22.ctx", {1, {1}}},     {"3m22.ctx", {5, {1}}},
      {"4m22.ctx", {1, {1}}},  {"6m22.ctx", {5, {1}}},   {"12m22.ctx", {5, {1}}},    {"sl3_7.ctx", {28, {1, 2}}},
      {"su3_5.ctx", {16, {1, 2}}}};
  for (const auto& [file, exp] : expected) {
    auto t = ingest_table(fixture_path(file));
    auto p = block_partition(t, 2);
    check_partition(t, p);
    check_independence(t);
    EXPECT_EQ(p.blocks.size(), exp.first) << file;
    EXPECT_EQ(one_based(real_blocks(p, t)), exp.second) << file;
  }
}

TEST(Blocks, OddPrimeBlocks) {
  auto t = compute_table(group_create(Family::SL, 2, 3));
  auto p3 = block_partition(t, 3);
  check_partition(t, p3);
  // the three 3-defect-zero candidates: degree 3 has full 3-part
  std::size_t singletons = 0;
  for (const auto& b : p3.blocks) singletons += b.defect == 0;
  EXPECT_EQ(singletons, 1u);
  EXPECT_THROW(block_partition(t, 4), InvalidArgument);
}

TEST(Blocks, Covering) {
  auto g = compute_table(group_create(Family::SL, 2, 3));
  std::istringstream in(kQ8);
  auto q8 = parse_ctx(in);
  std::size_t c2 = 0, c4 = 0;
  for (std::size_t k = 0; k < g.class_count(); ++k) {
    if (g.orders[k] == 2) c2 = k;
    if (g.orders[k] == 4) c4 = k;
  }
  Fusion f{"Q8", g.label, {0, c2, c4, c4, c4}};
  auto pg = block_partition(g, 2), pn = block_partition(q8, 2);
  ASSERT_EQ(pn.blocks.size(), 1u);
  EXPECT_EQ(block_covering(g, q8, f, pg, pn, pg.principal), std::set<std::size_t>{pn.principal});
  auto both = block_covering_both(g, q8, f, pg, pn, 0);
  EXPECT_EQ(both.some, both.every);

  Fusion id{g.label, g.label, {}};
  for (std::size_t k = 0; k < g.class_count(); ++k) id.map.push_back(k);
  auto t33 = compute_table(group_create(Family::SL, 3, 3));
  Fusion id33{t33.label, t33.label, {}};
  for (std::size_t k = 0; k < t33.class_count(); ++k) id33.map.push_back(k);
  auto p33 = block_partition(t33, 2);
  for (std::size_t b = 0; b < p33.blocks.size(); ++b) {
    EXPECT_EQ(block_covering(t33, t33, id33, p33, p33, b), std::set<std::size_t>{b});
  }
}

TEST(Blocks, JsonReport) {
  auto t = ingest_table(fixture_path("sl3_7.ctx"));
  auto p = block_partition(t, 2);
  auto j = nlohmann::json::parse(block_report_json(t, p));
  EXPECT_EQ(j["block_count"], 28);
  EXPECT_EQ(j["principal"], 1);
  EXPECT_EQ(j["real_blocks"], (std::vector<int>{1, 2}));
  EXPECT_TRUE(j["nonprincipal_real"].get<bool>());
  EXPECT_EQ(block_report_json(t, p), block_report_json(t, p));
}
