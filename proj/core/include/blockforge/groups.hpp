#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "blockforge/finite_field.hpp"
#include "blockforge/integer.hpp"
#include "blockforge/matrix.hpp"

namespace blockforge {

enum class Family { GL, SL, GU, SU, Sp, SOodd, SOplus, SOminus };

std::string to_string(Family f);
/// Accepts GL, SL, GU, SU, Sp, SOodd (also SO), SOplus (SO+), SOminus (SO-).
Family parse_family(std::string_view s);

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

/// A classical matrix group over GF(q), q odd.
struct GroupSpec {
  Family family;
  unsigned n;        // rank parameter: GL_n, Sp_2n, SO_2n+1, SO^pm_2n
  std::uint64_t q;
  std::size_t dim;   // matrix size N
  const FieldDescriptor* base;   // GF(q)
  const FieldDescriptor* entry;  // GF(q) or GF(q^2)
  Matrix form;                   // j_N, i_2n, or identity for GL/SL
  std::optional<Matrix> twist;   // x for SOminus

  /// +1/-1 for GL/GU and SO+/SO-, 0 otherwise.
  int eps() const noexcept;
  bool unitary() const noexcept { return family == Family::GU || family == Family::SU; }
  std::string label() const;
};

/// j_n (antidiagonal ones).
Matrix form_j(const FieldDescriptor& f, std::size_t n);
/// i_2n = [[0, j_n], [-j_n, 0]].
Matrix form_i(const FieldDescriptor& f, std::size_t n);

GroupSpec group_create(Family family, unsigned n, std::uint64_t q);

Integer group_order(const GroupSpec& spec);

/// Throws InvalidArgument on size or field mismatch.
bool contains(const GroupSpec& spec, const Matrix& m);

/// Exact multiplicative order of an invertible matrix.
std::uint64_t element_order(const Matrix& m);

/// Scalar matrices in the group.
std::vector<Matrix> center_elements(const GroupSpec& spec);

struct DerivedMembership {
  bool member;
  std::string method;
};

/// Throws Undecidable for even-order elements of orthogonal families.
DerivedMembership in_derived_subgroup(const GroupSpec& spec, const Matrix& m);

/// Generating set used for enumeration: root-type unipotent elements and torus elements.
std::vector<Matrix> generators(const GroupSpec& spec);

/// Packs entries into a 128-bit key whose numeric order is the row-major
/// lexicographic order of entry codes.
using ElementKey = unsigned __int128;

struct ElementKeyHash {
  std::size_t operator()(ElementKey k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ull));
  }
};

/// Full element list and conjugacy classes of an enumerable group.
class EnumeratedGroup {
 public:
  EnumeratedGroup(const GroupSpec& spec, std::uint64_t cap = kDefaultEnumerationCap);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const Matrix& element(std::size_t i) const { return elements_[i]; }
  std::size_t inverse_index(std::size_t i) const { return inverse_[i]; }
  ElementKey key(const Matrix& m) const;
  /// Index of a member, throws InvalidArgument for non-members.
  std::size_t index_of(const Matrix& m) const;

  std::size_t class_count() const noexcept { return reps_.size(); }
  const Matrix& representative(std::size_t c) const { return elements_[reps_[c]]; }
  std::size_t representative_index(std::size_t c) const { return reps_[c]; }
  std::uint64_t class_size(std::size_t c) const { return members_[c].size(); }
  std::uint64_t class_order(std::size_t c) const { return orders_[c]; }
  const std::vector<std::size_t>& class_members(std::size_t c) const { return members_[c]; }
  std::size_t class_of_index(std::size_t i) const { return class_of_[i]; }
  std::size_t class_of(const Matrix& m) const { return class_of_[index_of(m)]; }
  std::size_t inverse_class(std::size_t c) const { return class_of_[inverse_[reps_[c]]]; }
  /// Class of g^k for g in class c.
  std::size_t power_class(std::size_t c, std::uint64_t k) const;
  std::uint64_t exponent() const;

  /// Conjugator x with x a x^-1 = b, if any.
  std::optional<Matrix> transporter(const Matrix& a, const Matrix& b) const;

 private:
  GroupSpec spec_;
  unsigned bits_;
  std::vector<Matrix> elements_;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> index_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> reps_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::size_t> class_of_;
};

/// Number of classes whose element order is prime to m (m = 2p counts the
/// semisimple classes of odd order).
std::size_t count_classes_prime_to(const EnumeratedGroup& g, std::uint64_t m);

/// Conjugacy data of an enumerable group; throws Unenumerable above the cap.
std::shared_ptr<const EnumeratedGroup> conjugacy_data(const GroupSpec& spec,
                                                      std::uint64_t cap = kDefaultEnumerationCap);

struct ConjugacyWitness {
  Matrix conjugator;  // conjugator * a * conjugator^-1 == b
  std::string method;
};

struct NotConjugate {
  std::string invariant;
};

struct Inconclusive {
  std::string reason;
};

using ConjugacyResult = std::variant<ConjugacyWitness, NotConjugate, Inconclusive>;

struct ConjugacyOptions {
  std::vector<Matrix> hints;
  /// Largest number of candidates enumerated from an intertwiner space.
  std::uint64_t search_budget = 4'000'000;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  /// Permit enumerating the group for a transporter scan.
  bool allow_enumeration = true;
};

ConjugacyResult is_conjugate(const GroupSpec& spec, const Matrix& a, const Matrix& b,
                             const ConjugacyOptions& options = {});

bool verify_witness(const GroupSpec& spec, const Matrix& a, const Matrix& b, const Matrix& x);

/// phi : GL_n(q) -> Sp_2n(q) or SO+_2n(q), g -> diag(g, j g^-tr j).
Matrix embed_phi(const Matrix& g);
/// psi : GL_n(q) -> SO_2n+1(q), g -> diag(g, 1, j g^-tr j).
Matrix embed_psi_odd(const Matrix& g);
/// psi : GL_{n-1}(q) -> SO-_2n(q), g -> diag(g, id_2, j g^-tr j).
Matrix embed_psi_minus(const Matrix& g);

}  // namespace blockforge
