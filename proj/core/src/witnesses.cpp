#include "blockforge/witnesses.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"

namespace blockforge {

namespace {

using json = nlohmann::ordered_json;

std::string show(const FieldElement& x) {
  std::ostringstream os;
  os << x << " in " << x.field().label();
  return os.str();
}

std::string show_coords(const std::vector<std::size_t>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

Matrix transposition_block(const FieldDescriptor& f) { return form_j(f, 2); }

/// First invertible X (in coefficient order over the nullspace basis) with X b X^-1 = b^-1.
Matrix small_inverter(const Matrix& b) {
  const auto& f = b.field();
  const std::size_t n = b.size();
  const Matrix binv = b.inverse();
  std::vector<FieldCode> sys(n * n * n * n, 0);
  // Unknown X_{ik} sits at column i*n+k; equation (i,j): sum_k X_ik b_kj - sum_k binv_ik X_kj = 0.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = (i * n + j) * n * n;
      for (std::size_t k = 0; k < n; ++k) {
        sys[row + i * n + k] = f.add(sys[row + i * n + k], b.at(k, j));
        sys[row + k * n + j] = f.sub(sys[row + k * n + j], binv.at(i, k));
      }
    }
  auto basis = nullspace(f, n * n, n * n, sys);
  const std::size_t d = basis.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > 1'000'000 / f.q()) throw BoundExceeded("inverter search space too large");
    total *= f.q();
  }
  std::vector<FieldCode> coef(d, 0);
  for (std::uint64_t t = 1; t < total; ++t) {
    for (std::size_t i = d; i-- > 0;) {
      if (++coef[i] < f.q()) break;
      coef[i] = 0;
    }
    std::vector<FieldCode> x(n * n, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (coef[i] == 0) continue;
      for (std::size_t e = 0; e < n * n; ++e) x[e] = f.add(x[e], f.mul(coef[i], basis[i][e]));
    }
    Matrix m(f, n, std::move(x));
    if (m.det() != 0) return m;
  }
  throw IntegrityError("block is not conjugate to its inverse");
}

Matrix companion(const FieldDescriptor& f, const std::vector<FieldCode>& monic) {
  const std::size_t n = monic.size() - 1;
  Matrix c(f, n);
  for (std::size_t i = 0; i + 1 < n; ++i) c.set(i + 1, i, 1);
  for (std::size_t i = 0; i < n; ++i) c.set(i, n - 1, f.neg(monic[i]));
  return c;
}

/// g -> diag(g, j (g^sigma)^-tr j), GL_2(q^2) into GU_4(q).
Matrix unitary_double(const Matrix& g, std::uint64_t q) {
  Matrix j = form_j(g.field(), g.size());
  return block_diagonal({g, j * g.entry_power(q).transpose().inverse() * j});
}

/// Least symmetric s (row-major) with s F s = F, det s = 1 and order 5.
Matrix symmetric_order5(const FieldDescriptor& f, const Matrix& form) {
  const std::size_t n = form.size();
  Matrix s(f, n);
  std::optional<Matrix> found;
  // Row i's entries below column i are fixed by symmetry; the rest are enumerated.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (found) return;
    if (i == n) {
      if (s.det() == 1 && element_order(s) == 5) found = s;
      return;
    }
    const std::size_t free = n - i;
    std::vector<FieldCode> v(free, 0);
    for (;;) {
      for (std::size_t k = 0; k < free; ++k) {
        s.set(i, i + k, v[k]);
        s.set(i + k, i, v[k]);
      }
      bool ok = true;
      for (std::size_t k = 0; k <= i && ok; ++k) {
        FieldCode acc = 0;
        for (std::size_t a = 0; a < n; ++a) {
          if (s.at(i, a) == 0) continue;
          for (std::size_t b = 0; b < n; ++b) {
            if (form.at(a, b) == 0) continue;
            acc = f.add(acc, f.mul(s.at(i, a), f.mul(form.at(a, b), s.at(k, b))));
          }
        }
        ok = acc == form.at(i, k);
      }
      if (ok) rec(i + 1);
      if (found) return;
      std::size_t k = free;
      while (k-- > 0) {
        if (++v[k] < f.q()) break;
        v[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
    for (std::size_t k = 0; k < free; ++k) {
      s.set(i, i + k, 0);
      s.set(i + k, i, 0);
    }
  };
  rec(0);
  if (!found) throw IntegrityError("no symmetric order-5 isometry found");
  return *found;
}

/// Checks that s has the same characteristic polynomial as the torus model d.
void check_torus_model(const Matrix& s, const Matrix& d) {
  if (!(s.embedded(d.field()).characteristic_polynomial() == d.characteristic_polynomial()))
    throw IntegrityError("element does not match its torus model");
}

Witness finish(GroupSpec spec, Matrix s, std::vector<Matrix> inverters, Trace trace) {
  if (!contains(spec, s)) throw IntegrityError("constructed element is not in " + spec.label());
  for (const auto& x : inverters) {
    if (!verify_witness(spec, s, s.inverse(), x)) throw IntegrityError("constructed inverter fails in " + spec.label());
  }
  trace.emplace_back("order", std::to_string(element_order(s)));
  return Witness{std::move(spec), std::move(s), std::move(inverters), std::move(trace)};
}

const Witness& require(const Construction& c) {
  if (auto* w = std::get_if<Witness>(&c)) return *w;
  throw IntegrityError("type A construction unexpectedly empty: " + std::get<NoWitness>(c).reason);
}

}  // namespace

Matrix sp4_3_special() {
  static const Matrix s = [] {
    const auto& f = field_create(3, 1);
    return symmetric_order5(f, form_i(f, 2));
  }();
  return s;
}

Matrix so5_3_special() {
  static const Matrix s = [] {
    const auto& f = field_create(3, 1);
    return symmetric_order5(f, form_j(f, 5));
  }();
  return s;
}

Construction construct_typeA(unsigned n, std::uint64_t q, int eps) {
  if (eps != 1 && eps != -1) throw InvalidArgument("eps must be +1 or -1");
  GroupSpec spec = group_create(eps > 0 ? Family::GL : Family::GU, n, q);
  if (q == 3 && n <= 3) {
    return NoWitness{"GL" + std::to_string(n) + "(" + (eps > 0 ? "" : "-") +
                     "3) has no nontrivial real semisimple element of odd order"};
  }
  const auto& f = *spec.entry;
  const auto& big = field_create(spec.base->p(), 2 * spec.base->k());
  const std::uint64_t m_split = odd_part(eps > 0 ? q - 1 : q + 1);
  const std::uint64_t m_twisted = odd_part(eps > 0 ? q + 1 : q - 1);
  Trace trace;
  trace.emplace_back("group", spec.label());

  if (m_split == 1 && m_twisted == 1) {
    // q = 3: eigenvalues lambda, lambda^2, lambda^3, lambda^4 with lambda of order 5.
    const auto& f81 = field_create(3, 4);
    FieldElement lambda = primitive_root_of_unity(f81, 5);
    std::vector<std::size_t> coords{0, 1, n - 2, n - 1};
    Matrix block(f, 4), inv(f, 4);
    if (eps > 0) {
      block = companion(f, {1, 1, 1, 1, 1});
      inv = small_inverter(block);
      trace.emplace_back("route", "companion of x^4+x^3+x^2+x+1");
    } else {
      FieldElement t = restrict_to(lambda + lambda.inverse(), f);
      Matrix g(f, 2, {0, f.neg(1), 1, t.code()});
      block = unitary_double(g, q);
      inv = unitary_double(transposition_block(f), q);
      trace.emplace_back("route", "GL2(q^2) block g -> diag(g, j g^(-sigma tr) j)");
    }
    trace.emplace_back("m", "5");
    trace.emplace_back("lambda", show(lambda));
    trace.emplace_back("coordinates", show_coords(coords));
    Matrix d = Matrix::diagonal(f81, {lambda.code(), lambda.pow(2).code(), lambda.pow(3).code(), lambda.pow(4).code()});
    check_torus_model(block, d);
    return finish(std::move(spec), corner_embed(block, n, coords), {corner_embed(inv, n, coords)}, std::move(trace));
  }

  const bool split = m_split > 1;
  const std::uint64_t m = split ? m_split : m_twisted;
  FieldElement lambda = primitive_root_of_unity(big, m);
  trace.emplace_back("m", std::to_string(m));
  trace.emplace_back("m_divides", split ? (eps > 0 ? "q-1" : "q+1") : (eps > 0 ? "q+1" : "q-1"));
  trace.emplace_back("lambda", show(lambda));
  const std::vector<std::size_t> coords{0, n - 1};
  trace.emplace_back("coordinates", show_coords(coords));
  FieldElement t = restrict_to(lambda + lambda.inverse(), *spec.base);
  Matrix block(f, 2), inv(f, 2);
  if (eps > 0 && split) {
    FieldElement l = restrict_to(lambda, f);
    block = Matrix::diagonal(f, {l.code(), l.inverse().code()});
    inv = transposition_block(f);
    trace.emplace_back("route", "diagonal");
  } else if (eps > 0) {
    block = Matrix(f, 2, {0, f.neg(1), 1, t.code()});
    inv = transposition_block(f);
    trace.emplace_back("route", "companion of x^2-tx+1");
  } else {
    // [[a, d], [(a^2-1)/d, a]] with a = t/2 and d^q = -d is unitary for j_2.
    FieldCode a = f.div(embed(t, f).code(), f.from_integer(2));
    FieldCode zeta = f.generator();
    FieldCode delta = f.pow(zeta, (q + 1) / 2);
    FieldCode mu = f.pow(zeta, (q - 1) / 2);
    block = Matrix(f, 2, {a, delta, f.div(f.sub(f.mul(a, a), 1), delta), a});
    inv = Matrix::diagonal(f, {mu, f.neg(mu)});
    trace.emplace_back("route", split ? "unitary block, norm-one lambda" : "unitary block, lambda in GF(q)");
  }
  Matrix d = Matrix::diagonal(big, {lambda.code(), lambda.inverse().code()});
  check_torus_model(block, d);
  return finish(std::move(spec), corner_embed(block, n, coords), {corner_embed(inv, n, coords)}, std::move(trace));
}

Witness construct_typeC_Sp(unsigned n, std::uint64_t q) {
  GroupSpec spec = group_create(Family::Sp, n, q);
  Trace trace;
  trace.emplace_back("group", spec.label());
  if (q == 3 && n <= 3) {
    const auto& f = *spec.entry;
    const auto& f81 = field_create(3, 4);
    FieldElement l = primitive_root_of_unity(f81, 5);
    Matrix s4 = sp4_3_special();
    check_torus_model(s4, Matrix::diagonal(f81, {l.code(), l.pow(3).code(), l.pow(2).code(), l.pow(4).code()}));
    trace.emplace_back("route", "Sp4(3) torus element");
    trace.emplace_back("torus_model", "diag(l, l^3, l^2, l^4), l = " + show(l));
    Matrix i4 = form_i(f, 2);
    if (n == 2) return finish(std::move(spec), s4, {i4}, std::move(trace));
    std::vector<std::size_t> coords{0, 1, 4, 5};
    trace.emplace_back("embedding", "Sp4 corner at " + show_coords(coords));
    return finish(std::move(spec), corner_embed(s4, 6, coords), {corner_embed(i4, 6, coords)}, std::move(trace));
  }
  const Construction base = construct_typeA(n, q, 1);
  const Witness& a = require(base);
  trace.emplace_back("route", "phi(GL witness)");
  for (auto& kv : a.trace)
    if (kv.first != "group" && kv.first != "order") trace.emplace_back("gl_" + kv.first, kv.second);
  std::vector<Matrix> inv;
  for (auto& x : a.inverters) inv.push_back(embed_phi(x));
  return finish(std::move(spec), embed_phi(a.element), std::move(inv), std::move(trace));
}

Witness construct_typeB_SO(unsigned n, std::uint64_t q) {
  GroupSpec spec = group_create(Family::SOodd, n, q);
  Trace trace;
  trace.emplace_back("group", spec.label());
  if (q == 3 && n <= 3) {
    const auto& f = *spec.entry;
    const auto& f81 = field_create(3, 4);
    FieldElement l = primitive_root_of_unity(f81, 5);
    Matrix s5 = so5_3_special();
    check_torus_model(s5, Matrix::diagonal(f81, {l.code(), l.pow(3).code(), 1, l.pow(2).code(), l.pow(4).code()}));
    trace.emplace_back("route", "SO5(3) torus element");
    trace.emplace_back("torus_model", "diag(l, l^3, 1, l^2, l^4), l = " + show(l));
    Matrix j5 = form_j(f, 5);
    if (n == 2) return finish(std::move(spec), s5, {j5}, std::move(trace));
    std::vector<std::size_t> coords{0, 1, 3, 5, 6};
    trace.emplace_back("embedding", "SO5 corner at " + show_coords(coords));
    return finish(std::move(spec), corner_embed(s5, 7, coords), {corner_embed(j5, 7, coords)}, std::move(trace));
  }
  const Construction base = construct_typeA(n, q, 1);
  const Witness& a = require(base);
  trace.emplace_back("route", "psi(GL witness)");
  for (auto& kv : a.trace)
    if (kv.first != "group" && kv.first != "order") trace.emplace_back("gl_" + kv.first, kv.second);
  std::vector<Matrix> inv;
  for (auto& x : a.inverters) inv.push_back(embed_psi_odd(x));
  return finish(std::move(spec), embed_psi_odd(a.element), std::move(inv), std::move(trace));
}

Witness construct_typeD(unsigned n, std::uint64_t q, int eps) {
  if (eps != 1 && eps != -1) throw InvalidArgument("eps must be +1 or -1");
  GroupSpec spec = group_create(eps > 0 ? Family::SOplus : Family::SOminus, n, q);
  Trace trace;
  trace.emplace_back("group", spec.label());
  if (eps < 0 && n == 4 && q == 3) {
    const auto& f3 = *spec.base;
    // Columns e1, e2, e3+2e6, e7, e8 span a j5-space; e3+e6, e4, e5 complete the basis.
    const std::vector<std::vector<std::pair<std::size_t, FieldCode>>> cols{
        {{0, 1}}, {{1, 1}}, {{2, 1}, {5, 2}}, {{6, 1}}, {{7, 1}}, {{2, 1}, {5, 1}}, {{3, 1}}, {{4, 1}}};
    Matrix basis(f3, 8);
    for (std::size_t c = 0; c < 8; ++c)
      for (auto [r, v] : cols[c]) basis.set(r, c, v);
    Matrix binv = basis.inverse();
    Matrix s = basis * block_diagonal({so5_3_special(), Matrix::identity(f3, 3)}) * binv;
    Matrix x = basis * block_diagonal({form_j(f3, 5), Matrix::identity(f3, 3)}) * binv;
    trace.emplace_back("route", "SO5(3) torus element in a j5-subspace");
    trace.emplace_back("basis", "e1, e2, e3+2e6, e7, e8 | e3+e6, e4, e5");
    return finish(std::move(spec), s.embedded(*spec.entry), {x.embedded(*spec.entry)}, std::move(trace));
  }
  const unsigned rank = eps > 0 ? n : n - 1;
  const Construction base = construct_typeA(rank, q, 1);
  const Witness& a = require(base);
  trace.emplace_back("route", eps > 0 ? "phi(GL witness)" : "psi(GL witness)");
  for (auto& kv : a.trace)
    if (kv.first != "group" && kv.first != "order") trace.emplace_back("gl_" + kv.first, kv.second);
  auto image = [&](const Matrix& g) {
    return eps > 0 ? embed_phi(g) : embed_psi_minus(g).embedded(*spec.entry);
  };
  std::vector<Matrix> inv;
  for (auto& x : a.inverters) inv.push_back(image(x));
  return finish(std::move(spec), image(a.element), std::move(inv), std::move(trace));
}

std::string to_string(CentralVerdict v) {
  switch (v) {
    case CentralVerdict::OrderDiffers: return "order_differs";
    case CentralVerdict::CharpolyDiffers: return "eigenvalues_differ";
    case CentralVerdict::NotConjugate: return "not_conjugate";
    case CentralVerdict::Conjugate: return "conjugate";
    case CentralVerdict::Inconclusive: return "inconclusive";
  }
  return "";
}

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Failed: return "FAILED";
    case Conclusion::Group: return "group";
    case Conclusion::Derived: return "derived";
    case Conclusion::Quotient: return "quotient";
  }
  return "";
}

std::string describe(Conclusion c) {
  switch (c) {
    case Conclusion::Failed: return "condition A fails; nothing follows";
    case Conclusion::Group: return "A holds: O[G] has a non-principal real 2-block";
    case Conclusion::Derived:
      return "A and B hold: if G/G_der is a p'-group, O[G_der] has a non-principal real 2-block";
    case Conclusion::Quotient:
      return "A, B and C hold: if G/G_der is a p'-group and |Z(G)| = |G*/G*_der|, "
             "O[G_der/(G_der cap Z(G))] has a non-principal real 2-block";
  }
  return "";
}

namespace {

std::string centralizer_note(Family f) {
  switch (f) {
    case Family::GL:
    case Family::GU: return "GL_n has connected center, so centralizers of semisimple elements are connected";
    case Family::SL:
    case Family::SU: return "centralizer taken in GL_n, whose center is connected";
    case Family::Sp: return "Sp_2n is simply connected, so centralizers of semisimple elements are connected";
    case Family::SOodd:
    case Family::SOplus:
    case Family::SOminus:
      return "the isogeny from Spin has kernel of order 2, so an odd-order semisimple element has connected centralizer";
  }
  return "";
}

}  // namespace

ConditionA check_condition_A(const GroupSpec& spec, const Matrix& s, const ConjugacyOptions& options) {
  if (!contains(spec, s)) throw InvalidArgument("element is not in " + spec.label());
  ConditionA r;
  r.order = element_order(s);
  r.odd = r.order % 2 == 1;
  r.nontrivial = r.order > 1;
  r.centralizer_note = centralizer_note(spec.family);
  if (r.nontrivial) r.reality = is_conjugate(spec, s, s.inverse(), options);
  if (r.odd && r.nontrivial && r.reality) {
    if (auto* w = std::get_if<ConjugacyWitness>(&*r.reality)) r.passed = verify_witness(spec, s, s.inverse(), w->conjugator);
  }
  return r;
}

ConditionB check_condition_B(const GroupSpec& spec, const Matrix& s, const ConjugacyOptions& options) {
  if (!contains(spec, s)) throw InvalidArgument("element is not in " + spec.label());
  ConditionB r;
  r.passed = true;
  const std::uint64_t order = element_order(s);
  const Polynomial cp = s.characteristic_polynomial();
  ConjugacyOptions opts = options;
  opts.hints.clear();
  for (auto& z : center_elements(spec)) {
    if (z.is_identity()) continue;
    Matrix sz = s * z;
    CentralCheck c{z, CentralVerdict::Inconclusive, "", std::nullopt};
    const std::uint64_t o = element_order(sz);
    if (o != order) {
      c.verdict = CentralVerdict::OrderDiffers;
      c.detail = "|sz| = " + std::to_string(o) + ", |s| = " + std::to_string(order);
    } else if (!(sz.characteristic_polynomial() == cp)) {
      c.verdict = CentralVerdict::CharpolyDiffers;
      c.detail = "eigenvalue multisets of s and sz differ";
    } else {
      auto res = is_conjugate(spec, s, sz, opts);
      if (auto* w = std::get_if<ConjugacyWitness>(&res)) {
        c.verdict = CentralVerdict::Conjugate;
        c.detail = w->method;
        c.conjugator = w->conjugator;
      } else if (auto* nc = std::get_if<NotConjugate>(&res)) {
        c.verdict = CentralVerdict::NotConjugate;
        c.detail = nc->invariant;
      } else {
        c.detail = std::get<Inconclusive>(res).reason;
      }
    }
    if (c.verdict == CentralVerdict::Conjugate || c.verdict == CentralVerdict::Inconclusive) r.passed = false;
    r.checks.push_back(std::move(c));
  }
  return r;
}

ConditionC check_condition_C(const GroupSpec& spec, const Matrix& s) {
  ConditionC r;
  try {
    auto d = in_derived_subgroup(spec, s);
    r.decided = true;
    r.member = d.member;
    r.method = d.method;
    r.passed = d.member;
  } catch (const Undecidable& e) {
    r.method = e.what();
  }
  return r;
}

namespace {

Conclusion conclude(bool a, bool b, bool c) {
  if (!a) return Conclusion::Failed;
  if (!b) return Conclusion::Group;
  return c ? Conclusion::Quotient : Conclusion::Derived;
}

json matrix_json(const Matrix& m) {
  json entries = json::array();
  for (FieldCode c : m.entries()) entries.push_back(m.field().digits(c));
  return entries;
}

Matrix matrix_from_json(const FieldDescriptor& f, std::size_t n, const json& j) {
  if (!j.is_array() || j.size() != n * n) throw ParseError("matrix must have " + std::to_string(n * n) + " entries", 0);
  std::vector<FieldCode> e;
  for (auto& x : j) {
    auto d = x.get<std::vector<std::uint64_t>>();
    if (d.size() != f.k()) throw ParseError("entry must have " + std::to_string(f.k()) + " coefficients", 0);
    for (auto v : d)
      if (v >= f.p()) throw ParseError("coefficient out of range", 0);
    e.push_back(f.from_digits(d));
  }
  return Matrix(f, n, std::move(e));
}

json conjugacy_json(const ConjugacyResult& r) {
  json j;
  if (auto* w = std::get_if<ConjugacyWitness>(&r)) {
    j["status"] = "witness";
    j["method"] = w->method;
    j["conjugator"] = matrix_json(w->conjugator);
  } else if (auto* n = std::get_if<NotConjugate>(&r)) {
    j["status"] = "not_conjugate";
    j["invariant"] = n->invariant;
  } else {
    j["status"] = "inconclusive";
    j["reason"] = std::get<Inconclusive>(r).reason;
  }
  return j;
}

std::vector<std::string> basis_for(Conclusion c) {
  std::vector<std::string> out;
  if (c == Conclusion::Failed) return out;
  out.push_back("a nontrivial semisimple element satisfying A yields a non-principal real 2-block of G");
  if (c == Conclusion::Group) return out;
  out.push_back("adding B: restriction of the semisimple character to G_der stays irreducible and lies in a non-principal real block");
  if (c == Conclusion::Derived) return out;
  out.push_back("adding C: the block of G_der is trivial on G_der cap Z(G) and passes to the quotient");
  return out;
}

}  // namespace

WitnessCertificate certify(const GroupSpec& spec, const Matrix& s, const ConjugacyOptions& options, Trace trace) {
  WitnessCertificate cert{spec, s, std::move(trace), {}, {}, {}, Conclusion::Failed};
  cert.a = check_condition_A(spec, s, options);
  cert.b = check_condition_B(spec, s, options);
  cert.c = check_condition_C(spec, s);
  cert.conclusion = conclude(cert.a.passed, cert.b.passed, cert.c.passed);
  return cert;
}

WitnessCertificate certify(const Witness& w) {
  ConjugacyOptions opts;
  opts.hints = w.inverters;
  return certify(w.spec, w.element, opts, w.trace);
}

std::string certificate_json(const WitnessCertificate& cert) {
  const auto& f = *cert.spec.entry;
  json j;
  j["group"] = {{"family", to_string(cert.spec.family)},
                {"n", cert.spec.n},
                {"q", cert.spec.q},
                {"eps", cert.spec.eps()},
                {"label", cert.spec.label()}};
  j["field"] = {{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}};
  j["dim"] = cert.spec.dim;
  j["element"] = matrix_json(cert.element);

  json a;
  a["order"] = cert.a.order;
  a["odd"] = cert.a.odd;
  a["nontrivial"] = cert.a.nontrivial;
  a["reality"] = cert.a.reality ? conjugacy_json(*cert.a.reality) : json(nullptr);
  a["centralizer_note"] = cert.a.centralizer_note;
  a["passed"] = cert.a.passed;

  json b;
  json checks = json::array();
  for (auto& c : cert.b.checks) {
    json e;
    e["z"] = matrix_json(c.z);
    e["verdict"] = to_string(c.verdict);
    e["detail"] = c.detail;
    if (c.conjugator) e["conjugator"] = matrix_json(*c.conjugator);
    checks.push_back(std::move(e));
  }
  b["checks"] = std::move(checks);
  b["passed"] = cert.b.passed;

  json c;
  c["decided"] = cert.c.decided;
  c["member"] = cert.c.member;
  c["method"] = cert.c.method;
  c["passed"] = cert.c.passed;

  j["conditions"] = {{"A", std::move(a)}, {"B", std::move(b)}, {"C", std::move(c)}};
  json trace = json::object();
  for (auto& [k, v] : cert.trace) trace[k] = v;
  j["trace"] = std::move(trace);
  j["conclusion"] = to_string(cert.conclusion);
  j["conclusion_text"] = describe(cert.conclusion);
  j["basis"] = basis_for(cert.conclusion);
  return j.dump(2);
}

RecheckResult recheck_certificate(const std::string& text) {
  RecheckResult r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.messages.push_back(std::move(msg));
  };
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what(), 0);
  }
  try {
    const auto& g = j.at("group");
    GroupSpec spec = group_create(parse_family(g.at("family").get<std::string>()), g.at("n").get<unsigned>(),
                                  g.at("q").get<std::uint64_t>());
    const auto& f = *spec.entry;
    const auto& fj = j.at("field");
    if (fj.at("p").get<std::uint64_t>() != f.p() || fj.at("k").get<unsigned>() != f.k() ||
        fj.at("modulus").get<std::vector<std::uint64_t>>() != f.modulus()) {
      fail("field description does not match " + f.label());
      return r;
    }
    const std::size_t n = spec.dim;
    Matrix s = matrix_from_json(f, n, j.at("element"));
    if (!contains(spec, s)) {
      fail("element is not in " + spec.label());
      return r;
    }
    const Matrix sinv = s.inverse();

    // A: order by powering, reality by the conjugator.
    const auto& a = j.at("conditions").at("A");
    const std::uint64_t order = a.at("order").get<std::uint64_t>();
    bool order_ok = order > 0 && s.pow(order).is_identity();
    for (const auto& pe : factorize(order))
      if (order_ok && s.pow(order / pe.first).is_identity()) order_ok = false;
    if (!order_ok) fail("claimed order " + std::to_string(order) + " is wrong");
    bool a_pass = order_ok && order % 2 == 1 && order > 1;
    if (a.at("odd").get<bool>() != (order % 2 == 1)) fail("odd flag inconsistent with order");
    if (a.at("nontrivial").get<bool>() != (order > 1)) fail("nontrivial flag inconsistent with order");
    const auto& real = a.at("reality");
    bool real_ok = false;
    if (!real.is_null() && real.at("status") == "witness") {
      Matrix x = matrix_from_json(f, n, real.at("conjugator"));
      real_ok = contains(spec, x) && x * s == sinv * x;
      if (!real_ok) fail("reality conjugator does not invert the element");
    }
    a_pass = a_pass && real_ok;
    if (a.at("passed").get<bool>() != a_pass) fail("condition A verdict does not recheck");

    // B: every nontrivial central element is listed and each verdict rechecks.
    const auto& b = j.at("conditions").at("B");
    std::vector<Matrix> center;
    for (auto& z : center_elements(spec))
      if (!z.is_identity()) center.push_back(z);
    const auto& checks = b.at("checks");
    if (checks.size() != center.size()) fail("condition B does not list every nontrivial central element");
    bool b_pass = true;
    const Polynomial cp = s.characteristic_polynomial();
    for (std::size_t i = 0; i < checks.size() && i < center.size(); ++i) {
      const auto& c = checks[i];
      Matrix z = matrix_from_json(f, n, c.at("z"));
      if (!(z == center[i])) {
        fail("central element " + std::to_string(i) + " mismatch");
        continue;
      }
      Matrix sz = s * z;
      const std::string v = c.at("verdict").get<std::string>();
      if (v == to_string(CentralVerdict::OrderDiffers)) {
        if (order_ok && sz.pow(order).is_identity()) fail("order of sz does not differ for central element " + std::to_string(i));
      } else if (v == to_string(CentralVerdict::CharpolyDiffers)) {
        if (sz.characteristic_polynomial() == cp) fail("characteristic polynomials agree for central element " + std::to_string(i));
      } else if (v == to_string(CentralVerdict::Conjugate)) {
        b_pass = false;
        Matrix x = matrix_from_json(f, n, c.at("conjugator"));
        if (!(contains(spec, x) && x * s == sz * x)) fail("conjugator to sz fails for central element " + std::to_string(i));
      } else if (v == to_string(CentralVerdict::NotConjugate)) {
        fail("non-conjugacy by search for central element " + std::to_string(i) + " is not rechecked by multiplication");
      } else {
        b_pass = false;
      }
    }
    if (b.at("passed").get<bool>() != b_pass) fail("condition B verdict does not recheck");

    const auto& c = j.at("conditions").at("C");
    bool c_pass = false;
    try {
      c_pass = in_derived_subgroup(spec, s).member;
    } catch (const Undecidable&) {
    }
    if (c.at("passed").get<bool>() != c_pass) fail("condition C verdict does not recheck");

    const std::string concl = to_string(conclude(a_pass, b_pass, c_pass));
    if (j.at("conclusion").get<std::string>() != concl) fail("conclusion should be " + concl);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  }
  return r;
}

}  // namespace blockforge
