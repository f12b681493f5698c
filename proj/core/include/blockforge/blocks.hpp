#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blockforge/chartab.hpp"
#include "blockforge/cyclotomic.hpp"

namespace blockforge {

/// omega_chi(K) = |K| chi(g_K) / chi(1); throws IntegrityError if a quotient is not integral.
std::vector<std::vector<CycInt>> central_characters(const CharacterTable& t);

struct Block {
  std::vector<std::size_t> characters;  // row indices, ascending
  unsigned defect = 0;
  bool real = false;
};

struct BlockPartition {
  std::uint64_t ell = 2;
  std::size_t factor_index = 0;  // which maximal ideal above ell was used
  unsigned order_valuation = 0;  // a with ell^a || |G|
  std::vector<Block> blocks;     // ordered by least character index
  std::vector<std::size_t> block_of;
  std::size_t principal = 0;
};

/// chi ~ psi iff omega_chi and omega_psi agree modulo the chosen ideal on every class.
BlockPartition block_partition(const CharacterTable& t, std::uint64_t ell = 2, std::size_t factor_index = 0);

/// Number of maximal ideals above ell available for the table's exponent.
std::size_t ideal_choice_count(const CharacterTable& t, std::uint64_t ell = 2);

/// Blocks whose character set is stable under complex conjugation.
std::vector<std::size_t> real_blocks(const BlockPartition& p, const CharacterTable& t);

struct RealBlockResult {
  bool found = false;
  std::optional<std::size_t> witness;  // least non-principal real block
};

RealBlockResult has_nonprincipal_real_2block(const CharacterTable& t);

struct CoveringResult {
  std::set<std::size_t> some;   // N-blocks hit by Res chi for some chi in b
  std::set<std::size_t> every;  // N-blocks hit by Res chi for every chi in b
};

CoveringResult block_covering_both(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion,
                                   const BlockPartition& pg, const BlockPartition& pn, std::size_t block);

/// Covered N-blocks; throws IntegrityError if the two quantifiers disagree.
std::set<std::size_t> block_covering(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion,
                                     const BlockPartition& pg, const BlockPartition& pn, std::size_t block);

/// JSON block report: group, ell, blocks (1-based characters, degrees, defect, real), principal.
std::string block_report_json(const CharacterTable& t, const BlockPartition& p, bool include_real = true);

}  // namespace blockforge
