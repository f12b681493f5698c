#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blockforge/cyclotomic.hpp"
#include "blockforge/groups.hpp"
#include "blockforge/integer.hpp"

namespace blockforge {

enum class TableSource { Computed, Ingested };

/// Ordinary character table. Class 0 is the identity class and row 0 the
/// trivial character.
struct CharacterTable {
  std::string label;
  Integer order;
  std::uint64_t exponent = 1;
  std::vector<Integer> sizes;
  std::vector<std::uint64_t> orders;
  std::vector<std::size_t> inverse;  // 0-based class of g^-1
  std::vector<std::vector<CycInt>> values;
  TableSource source = TableSource::Computed;

  std::size_t class_count() const noexcept { return sizes.size(); }
  const Integer& degree(std::size_t chi) const { return values[chi][0].rational_value(); }
};

/// Checks every table invariant: class data, trivial first row, degrees,
/// row orthogonality on all pairs, the column diagonal, and (up to
/// full_column_limit classes) off-diagonal column orthogonality.
/// Throws IntegrityError naming the first violation.
void verify_table(const CharacterTable& t, std::size_t full_column_limit = 40);

/// Class structure of a finite group: everything Dixon-Schneider needs.
struct ClassStructure {
  std::string label;
  std::uint64_t order = 1;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> orders;
  std::vector<std::size_t> inverse;
  /// powers[i][s] = class of g_i^s for 0 <= s < orders[i].
  std::vector<std::vector<std::size_t>> powers;
  /// a_{ijk} = #{(x, y) in K_i x K_j : xy = g_k}, stored at (i*r + j)*r + k.
  std::vector<std::uint64_t> constants;

  std::size_t class_count() const noexcept { return sizes.size(); }
  std::uint64_t constant(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t r = sizes.size();
    return constants[(i * r + j) * r + k];
  }
};

ClassStructure class_structure(const EnumeratedGroup& g);

/// Class structure from a Cayley table mul[a][b] = index of ab. Classes are
/// ordered by element order, class size, then least element index.
ClassStructure class_structure_from_cayley(std::string label, const std::vector<std::vector<std::size_t>>& mul);

/// Least prime P = 1 mod e with P > 2 sqrt(order).
std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order);

/// Burnside-Dixon-Schneider. Rows are sorted trivial first, then by degree,
/// then by value vector.
CharacterTable compute_table(const ClassStructure& cs);
CharacterTable compute_table(const GroupSpec& spec, std::uint64_t cap = kDefaultEnumerationCap);

/// CTX reader. Throws ParseError carrying the line number, IntegrityError
/// when the table fails verification.
CharacterTable parse_ctx(std::istream& in, const std::string& source_name = "<input>");
CharacterTable ingest_table(const std::string& path);
void write_ctx(std::ostream& out, const CharacterTable& t);

/// Parses a single value token: an integer or c(n:a0,...,a_{phi(n)-1}).
CycInt parse_cyc_value(const std::string& token);

/// pi(i) is the row equal to the complex conjugate of row i.
std::vector<std::size_t> conj_permutation(const CharacterTable& t);

/// Class map from a subgroup N into G.
struct Fusion {
  std::string subgroup_label;
  std::string group_label;
  std::vector<std::size_t> map;  // 0-based G-class of each N-class
};

Fusion parse_fusion(std::istream& in);
Fusion read_fusion(const std::string& path);
void write_fusion(std::ostream& out, const Fusion& f);

/// Checks that sizes and element orders are compatible with the fusion.
void check_fusion(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion);

/// Multiplicities <Res chi, psi> for every psi in Irr(N).
std::vector<Integer> restrict_and_decompose(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion,
                                            std::size_t chi);

/// Column bijection sigma (class i of a -> class sigma[i] of b) under which
/// the two tables have the same rows up to order, if one exists.
std::optional<std::vector<std::size_t>> table_equivalence(const CharacterTable& a, const CharacterTable& b);

}  // namespace blockforge
