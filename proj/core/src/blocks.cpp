#include "blockforge/blocks.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"

namespace blockforge {

namespace {

unsigned integer_valuation(Integer v, std::uint64_t ell) {
  if (v.is_zero()) throw InvalidArgument("valuation of zero");
  const Integer l(static_cast<std::int64_t>(ell));
  unsigned a = 0;
  while (v.divisible_by(l)) {
    v = v.divexact(l);
    ++a;
  }
  return a;
}

}  // namespace

std::vector<std::vector<CycInt>> central_characters(const CharacterTable& t) {
  const std::size_t r = t.class_count();
  std::vector<std::vector<CycInt>> omega(r, std::vector<CycInt>(r));
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& d = t.degree(i);
    for (std::size_t k = 0; k < r; ++k) {
      CycInt num = CycInt(t.sizes[k]) * t.values[i][k];
      if (!num.divisible_by(d)) {
        throw IntegrityError("central character of character " + std::to_string(i + 1) + " is not integral at class " +
                             std::to_string(k + 1));
      }
      omega[i][k] = num.divexact(d);
    }
  }
  return omega;
}

std::size_t ideal_choice_count(const CharacterTable& t, std::uint64_t ell) {
  return IdealReduction::factor_count(t.exponent, ell);
}

BlockPartition block_partition(const CharacterTable& t, std::uint64_t ell, std::size_t factor_index) {
  if (!is_prime(ell)) throw InvalidArgument(std::to_string(ell) + " is not prime");
  const std::size_t r = t.class_count();
  IdealReduction red(t.exponent, ell, factor_index);
  auto omega = central_characters(t);
  std::map<std::vector<FieldCode>, std::size_t> seen;
  BlockPartition p;
  p.ell = ell;
  p.factor_index = factor_index;
  p.order_valuation = integer_valuation(t.order, ell);
  p.block_of.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<FieldCode> key(r);
    for (std::size_t k = 0; k < r; ++k) key[k] = red.reduce(omega[i][k]).code();
    auto [it, fresh] = seen.emplace(std::move(key), p.blocks.size());
    if (fresh) p.blocks.emplace_back();
    p.blocks[it->second].characters.push_back(i);
    p.block_of[i] = it->second;
  }
  for (auto& b : p.blocks) {
    unsigned lowest = p.order_valuation;
    for (std::size_t chi : b.characters) lowest = std::min(lowest, integer_valuation(t.degree(chi), ell));
    b.defect = p.order_valuation - lowest;
  }
  p.principal = p.block_of[0];
  auto pi = conj_permutation(t);
  for (auto& b : p.blocks) {
    b.real = std::all_of(b.characters.begin(), b.characters.end(),
                         [&](std::size_t chi) { return p.block_of[pi[chi]] == p.block_of[b.characters[0]]; });
  }
  return p;
}

std::vector<std::size_t> real_blocks(const BlockPartition& p, const CharacterTable& t) {
  auto pi = conj_permutation(t);
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& chars = p.blocks[b].characters;
    bool stable = std::all_of(chars.begin(), chars.end(), [&](std::size_t chi) { return p.block_of[pi[chi]] == b; });
    if (stable) out.push_back(b);
  }
  return out;
}

RealBlockResult has_nonprincipal_real_2block(const CharacterTable& t) {
  auto p = block_partition(t, 2);
  RealBlockResult res;
  for (std::size_t b : real_blocks(p, t)) {
    if (b != p.principal) {
      res.found = true;
      res.witness = b;
      break;
    }
  }
  return res;
}

CoveringResult block_covering_both(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion,
                                   const BlockPartition& pg, const BlockPartition& pn, std::size_t block) {
  if (pg.ell != pn.ell) throw InvalidArgument("block partitions use different primes");
  if (block >= pg.blocks.size()) throw InvalidArgument("block index out of range");
  CoveringResult res;
  bool first = true;
  for (std::size_t chi : pg.blocks[block].characters) {
    auto mult = restrict_and_decompose(tg, tn, fusion, chi);
    std::set<std::size_t> hit;
    for (std::size_t psi = 0; psi < mult.size(); ++psi) {
      if (!mult[psi].is_zero()) hit.insert(pn.block_of[psi]);
    }
    res.some.insert(hit.begin(), hit.end());
    if (first) {
      res.every = hit;
      first = false;
    } else {
      std::set<std::size_t> both;
      std::set_intersection(res.every.begin(), res.every.end(), hit.begin(), hit.end(), std::inserter(both, both.end()));
      res.every = std::move(both);
    }
  }
  return res;
}

std::set<std::size_t> block_covering(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion,
                                     const BlockPartition& pg, const BlockPartition& pn, std::size_t block) {
  auto res = block_covering_both(tg, tn, fusion, pg, pn, block);
  if (res.some != res.every) throw IntegrityError("covered blocks differ between the existential and universal tests");
  return res.some;
}

std::string block_report_json(const CharacterTable& t, const BlockPartition& p, bool include_real) {
  nlohmann::ordered_json j;
  j["group"] = t.label;
  j["order"] = t.order.to_string();
  j["ell"] = p.ell;
  j["source"] = t.source == TableSource::Computed ? "computed" : "ingested";
  j["classes"] = t.class_count();
  j["ideal_choice"] = p.factor_index;
  j["block_count"] = p.blocks.size();
  j["principal"] = p.principal + 1;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    nlohmann::ordered_json e;
    e["index"] = b + 1;
    std::vector<std::size_t> chars;
    std::vector<std::string> degs;
    for (std::size_t chi : p.blocks[b].characters) {
      chars.push_back(chi + 1);
      degs.push_back(t.degree(chi).to_string());
    }
    e["characters"] = chars;
    e["degrees"] = degs;
    e["defect"] = p.blocks[b].defect;
    if (include_real) e["real"] = p.blocks[b].real;
    blocks.push_back(std::move(e));
  }
  j["blocks"] = std::move(blocks);
  if (include_real) {
    std::vector<std::size_t> rb;
    for (std::size_t b : real_blocks(p, t)) rb.push_back(b + 1);
    j["real_blocks"] = rb;
    j["nonprincipal_real"] = rb.size() > 1;
  }
  return j.dump(2);
}

}  // namespace blockforge
