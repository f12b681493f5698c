#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blockforge/groups.hpp"
#include "blockforge/matrix.hpp"

namespace blockforge {

using Trace = std::vector<std::pair<std::string, std::string>>;

/// A semisimple element together with the data used to build it.
struct Witness {
  GroupSpec spec;
  Matrix element;
  /// Conjugators known to invert the element (passed to is_conjugate as hints).
  std::vector<Matrix> inverters;
  Trace trace;
};

struct NoWitness {
  std::string reason;
};

using Construction = std::variant<Witness, NoWitness>;

/// Witness in GL_n(q) (eps = +1) or GU_n(q) (eps = -1). NoWitness for (n, q) in {(2,3), (3,3)}.
Construction construct_typeA(unsigned n, std::uint64_t q, int eps);
/// Witness in Sp_2n(q).
Witness construct_typeC_Sp(unsigned n, std::uint64_t q);
/// Witness in SO_2n+1(q).
Witness construct_typeB_SO(unsigned n, std::uint64_t q);
/// Witness in SO+_2n(q) or SO-_2n(q), n >= 4.
Witness construct_typeD(unsigned n, std::uint64_t q, int eps);

/// Order-5 element s of Sp4(3) with i4 s i4^-1 = s^-1 (least in row-major order).
Matrix sp4_3_special();
/// Order-5 element s of SO5(3) with j5 s j5^-1 = s^-1 (least in row-major order).
Matrix so5_3_special();

struct ConditionA {
  std::uint64_t order = 0;
  bool odd = false;
  bool nontrivial = false;
  std::optional<ConjugacyResult> reality;
  std::string centralizer_note;
  bool passed = false;
};

enum class CentralVerdict { OrderDiffers, CharpolyDiffers, NotConjugate, Conjugate, Inconclusive };

std::string to_string(CentralVerdict v);

struct CentralCheck {
  Matrix z;
  CentralVerdict verdict;
  std::string detail;
  std::optional<Matrix> conjugator;  // set when verdict == Conjugate
};

struct ConditionB {
  std::vector<CentralCheck> checks;
  bool passed = false;
};

struct ConditionC {
  bool decided = false;
  bool member = false;
  std::string method;
  bool passed = false;
};

/// Which conclusion the passing conditions support.
enum class Conclusion {
  Failed,
  Group,     // A: the group algebra of G has a non-principal real 2-block
  Derived,   // A and B: same for G_der
  Quotient,  // A, B and C: same for G_der / (G_der cap Z(G))
};

std::string to_string(Conclusion c);
std::string describe(Conclusion c);

ConditionA check_condition_A(const GroupSpec& spec, const Matrix& s, const ConjugacyOptions& options = {});
ConditionB check_condition_B(const GroupSpec& spec, const Matrix& s, const ConjugacyOptions& options = {});
ConditionC check_condition_C(const GroupSpec& spec, const Matrix& s);

struct WitnessCertificate {
  GroupSpec spec;
  Matrix element;
  Trace trace;
  ConditionA a;
  ConditionB b;
  ConditionC c;
  Conclusion conclusion = Conclusion::Failed;
};

WitnessCertificate certify(const GroupSpec& spec, const Matrix& s, const ConjugacyOptions& options = {},
                           Trace trace = {});
WitnessCertificate certify(const Witness& w);

std::string certificate_json(const WitnessCertificate& cert);

struct RecheckResult {
  bool ok = true;
  std::vector<std::string> messages;
};

/// Re-verifies a serialized certificate using matrix arithmetic only: membership,
/// order, each conjugator and each characteristic-polynomial claim.
RecheckResult recheck_certificate(const std::string& json_text);

}  // namespace blockforge
