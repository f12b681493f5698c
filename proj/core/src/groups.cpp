#include "blockforge/groups.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"

namespace blockforge {

std::string to_string(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::GU: return "GU";
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
    case Family::SOodd: return "SOodd";
    case Family::SOplus: return "SOplus";
    case Family::SOminus: return "SOminus";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  static const std::map<std::string_view, Family> names{
      {"GL", Family::GL},       {"SL", Family::SL},           {"GU", Family::GU},
      {"SU", Family::SU},       {"Sp", Family::Sp},           {"SP", Family::Sp},
      {"SOodd", Family::SOodd}, {"SO", Family::SOodd},        {"SOplus", Family::SOplus},
      {"SO+", Family::SOplus},  {"SOminus", Family::SOminus}, {"SO-", Family::SOminus}};
  auto it = names.find(s);
  if (it == names.end()) throw InvalidArgument("unknown group family '" + std::string(s) + "'");
  return it->second;
}

int GroupSpec::eps() const noexcept {
  switch (family) {
    case Family::GL:
    case Family::SL:
    case Family::SOplus: return 1;
    case Family::GU:
    case Family::SU:
    case Family::SOminus: return -1;
    default: return 0;
  }
}

std::string GroupSpec::label() const {
  std::string qs = "(" + std::to_string(q) + ")";
  switch (family) {
    case Family::SOplus: return "SO" + std::to_string(dim) + "+" + qs;
    case Family::SOminus: return "SO" + std::to_string(dim) + "-" + qs;
    case Family::SOodd: return "SO" + std::to_string(dim) + qs;
    default: return to_string(family) + std::to_string(dim) + qs;
  }
}

Matrix form_j(const FieldDescriptor& f, std::size_t n) { return Matrix::antidiagonal(f, n); }

Matrix form_i(const FieldDescriptor& f, std::size_t n) {
  Matrix m(f, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    m.set(r, 2 * n - 1 - r, 1);
    m.set(n + r, n - 1 - r, f.neg(1));
  }
  return m;
}

GroupSpec group_create(Family family, unsigned n, std::uint64_t q) {
  auto [p, k] = prime_power_decompose(q);
  if (p == 0) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  if (p == 2) throw InvalidArgument("q must be odd");
  if (n < 2) throw InvalidArgument("n must be at least 2");
  if ((family == Family::SOplus || family == Family::SOminus) && n < 4) {
    throw InvalidArgument("n must be at least 4 for even-dimensional orthogonal groups");
  }
  const FieldDescriptor& base = field_create(p, k);
  const bool big_field = family == Family::GU || family == Family::SU || family == Family::SOminus;
  const FieldDescriptor& entry = big_field ? field_create(p, 2 * k) : base;
  std::size_t dim = n;
  if (family == Family::Sp || family == Family::SOplus || family == Family::SOminus) dim = 2 * n;
  if (family == Family::SOodd) dim = 2 * n + 1;
  Matrix form = Matrix::identity(entry, dim);
  if (family == Family::Sp) {
    form = form_i(entry, n);
  } else if (family != Family::GL && family != Family::SL) {
    form = form_j(entry, dim);
  }
  std::optional<Matrix> twist;
  if (family == Family::SOminus) {
    Matrix x = Matrix::identity(entry, dim);
    x.set(n - 1, n - 1, 0);
    x.set(n, n, 0);
    x.set(n - 1, n, 1);
    x.set(n, n - 1, 1);
    twist = x;
  }
  return GroupSpec{family, n, q, dim, &base, &entry, std::move(form), std::move(twist)};
}

Integer group_order(const GroupSpec& spec) {
  const Integer q(static_cast<std::int64_t>(spec.q));
  const unsigned n = spec.n;
  Integer r(1);
  switch (spec.family) {
    case Family::GL:
    case Family::SL:
      r = pow(q, n * (n - 1) / 2);
      for (unsigned i = 1; i <= n; ++i) r *= pow(q, i) - Integer(1);
      if (spec.family == Family::SL) r = r.divexact(q - Integer(1));
      break;
    case Family::GU:
    case Family::SU:
      r = pow(q, n * (n - 1) / 2);
      for (unsigned i = 1; i <= n; ++i) r *= pow(q, i) - Integer(i % 2 ? -1 : 1);
      if (spec.family == Family::SU) r = r.divexact(q + Integer(1));
      break;
    case Family::Sp:
    case Family::SOodd:
      r = pow(q, n * n);
      for (unsigned i = 1; i <= n; ++i) r *= pow(q, 2 * i) - Integer(1);
      break;
    case Family::SOplus:
    case Family::SOminus:
      r = pow(q, n * (n - 1)) * (pow(q, n) - Integer(spec.eps()));
      for (unsigned i = 1; i < n; ++i) r *= pow(q, 2 * i) - Integer(1);
      break;
  }
  return r;
}

bool contains(const GroupSpec& spec, const Matrix& m) {
  if (m.size() != spec.dim) throw InvalidArgument("matrix size does not match " + spec.label());
  if (&m.field() != spec.entry) throw InvalidArgument("matrix entries must lie in " + spec.entry->label());
  const auto& f = *spec.entry;
  FieldCode d = m.det();
  if (d == 0) return false;
  switch (spec.family) {
    case Family::GL: return true;
    case Family::SL: return d == 1;
    case Family::GU:
    case Family::SU:
      if (spec.family == Family::SU && d != 1) return false;
      return m.entry_power(spec.q).transpose() * spec.form * m == spec.form;
    case Family::Sp: return m.transpose() * spec.form * m == spec.form;
    case Family::SOodd:
    case Family::SOplus: return d == 1 && m.transpose() * spec.form * m == spec.form;
    case Family::SOminus:
      if (d != 1 || !(m.transpose() * spec.form * m == spec.form)) return false;
      return *spec.twist * m.entry_power(spec.q) * *spec.twist == m;
  }
  (void)f;
  return false;
}

namespace {

Matrix pow_integer(const Matrix& m, const Integer& e) {
  mpz_class z = e.to_mpz();
  Matrix result = Matrix::identity(m.field(), m.size());
  for (std::size_t b = mpz_sizeinbase(z.get_mpz_t(), 2); b-- > 0;) {
    result = result * result;
    if (mpz_tstbit(z.get_mpz_t(), b)) result = result * m;
  }
  return result;
}

}  // namespace

std::uint64_t element_order(const Matrix& m) {
  if (m.det() == 0) throw InvalidArgument("singular matrix has no order");
  const auto& f = m.field();
  auto degs = irreducible_factor_degrees(m.characteristic_polynomial());
  std::uint64_t l = 1;
  for (unsigned d : degs) l = lcm_u64(l, d);
  // Semisimple part divides q^l - 1 = prod_{d | l} Phi_d(q); unipotent part is a p-power >= N.
  std::map<std::uint64_t, unsigned> primes;
  const Integer qf(static_cast<std::int64_t>(f.q()));
  for (std::uint64_t d : divisors(l)) {
    // Phi_d(q) = prod_{e | d} (q^e - 1)^{mu(d/e)} computed as an exact quotient.
    Integer num(1), den(1);
    for (std::uint64_t e : divisors(d)) {
      std::uint64_t r = d / e;
      int mu = 1;
      bool square = false;
      for (auto [pr, ex] : factorize(r)) {
        if (ex > 1) square = true;
        mu = -mu;
      }
      if (square) continue;
      Integer t = pow(qf, static_cast<unsigned>(e)) - Integer(1);
      if (mu == 1) num *= t; else den *= t;
    }
    Integer phi = num.divexact(den);
    if (!phi.fits_int64()) throw BoundExceeded("element order computation exceeds 64-bit factorisation");
    for (auto [pr, ex] : factorize(static_cast<std::uint64_t>(phi.to_int64()))) primes[pr] += ex;
  }
  unsigned pe = 0;
  for (std::uint64_t pw = 1; pw < m.size(); pw *= f.p()) ++pe;
  if (pe) primes[f.p()] += pe;
  Integer ord(1);
  for (auto [pr, ex] : primes) ord *= pow(Integer(static_cast<std::int64_t>(pr)), ex);
  if (!pow_integer(m, ord).is_identity()) throw IntegrityError("element order bound violated");
  for (auto [pr, ex] : primes) {
    const Integer r(static_cast<std::int64_t>(pr));
    for (unsigned i = 0; i < ex; ++i) {
      Integer cand = ord.divexact(r);
      if (!pow_integer(m, cand).is_identity()) break;
      ord = cand;
    }
  }
  return static_cast<std::uint64_t>(ord.to_int64());
}

std::vector<Matrix> center_elements(const GroupSpec& spec) {
  const auto& f = *spec.entry;
  std::vector<FieldCode> scalars;
  const std::uint64_t n = spec.dim;
  switch (spec.family) {
    case Family::GL:
    case Family::SL:
      for (FieldCode c = 1; c < f.q(); ++c) {
        if (spec.family == Family::SL && f.pow(c, n) != 1) continue;
        scalars.push_back(c);
      }
      break;
    case Family::GU:
    case Family::SU: {
      // Norm-one scalars: the subgroup of order q+1 in GF(q^2)^x.
      FieldCode w = primitive_root_of_unity(f, spec.q + 1).code();
      FieldCode c = 1;
      for (std::uint64_t i = 0; i <= spec.q; ++i, c = f.mul(c, w)) {
        if (spec.family == Family::SU && f.pow(c, n) != 1) continue;
        scalars.push_back(c);
      }
      break;
    }
    case Family::Sp:
    case Family::SOplus:
    case Family::SOminus: scalars = {1, f.neg(1)}; break;
    case Family::SOodd: scalars = {1}; break;
  }
  std::sort(scalars.begin(), scalars.end());
  std::vector<Matrix> out;
  for (FieldCode c : scalars) {
    Matrix m = Matrix::scalar(f, spec.dim, c);
    if (!contains(spec, m)) throw IntegrityError("central scalar not in " + spec.label());
    out.push_back(std::move(m));
  }
  return out;
}

DerivedMembership in_derived_subgroup(const GroupSpec& spec, const Matrix& m) {
  if (!contains(spec, m)) throw InvalidArgument("element is not in " + spec.label());
  switch (spec.family) {
    case Family::GL:
    case Family::GU: return {m.det() == 1, "determinant"};
    case Family::SL:
    case Family::SU:
      if (spec.n == 2 && spec.q == 3) {
        // The derived subgroup of SL2(3) is its quaternion Sylow 2-subgroup.
        return {4 % element_order(m) == 0, "derived subgroup is the normal Sylow 2-subgroup"};
      }
      return {true, "perfect group"};
    case Family::Sp: return {true, "perfect group"};
    case Family::SOodd:
    case Family::SOplus:
    case Family::SOminus:
      if (element_order(m) % 2 == 1) return {true, "odd order in index-2 subgroup"};
      throw Undecidable("derived-subgroup membership of even-order elements in " + spec.label() +
                        " needs the spinor norm");
  }
  return {false, ""};
}

// ---------------------------------------------------------------------------

std::vector<Matrix> generators(const GroupSpec& spec) {
  const auto& f = *spec.entry;
  const std::size_t n = spec.dim;
  std::vector<Matrix> out;
  auto add_unique = [&](Matrix m) {
    if (m.is_identity()) return;
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  };
  std::vector<FieldCode> basis;
  for (unsigned t = 0, pw = 1; t < f.k(); ++t, pw *= static_cast<unsigned>(f.p())) basis.push_back(pw);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t ip = n - 1 - j, jp = n - 1 - i;
      for (FieldCode a : basis) {
        int found = 0;
        for (FieldCode b = 0; b < f.q() && found < 2; ++b) {
          for (FieldCode c = 0; c < f.q() && found < 2; ++c) {
            Matrix m = Matrix::identity(f, n);
            m.set(i, j, f.add(m.at(i, j), a));
            m.set(ip, jp, f.add(m.at(ip, jp), b));
            m.set(i, jp, f.add(m.at(i, jp), c));
            if (contains(spec, m)) {
              add_unique(std::move(m));
              ++found;
            }
          }
        }
      }
    }
  }
  const FieldCode t = f.generator();
  for (std::size_t i = 0; i <= (n - 1) / 2; ++i) {
    const std::size_t ip = n - 1 - i;
    for (FieldCode u = 1; u < f.q(); ++u) {
      Matrix m = Matrix::identity(f, n);
      m.set(i, i, t);
      if (ip != i) m.set(ip, ip, u);
      if (ip == i && u != 1) break;
      if (contains(spec, m)) {
        add_unique(std::move(m));
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

unsigned key_bits(const FieldDescriptor& f) { return static_cast<unsigned>(std::bit_width(f.q() - 1)); }

}  // namespace

EnumeratedGroup::EnumeratedGroup(const GroupSpec& spec, std::uint64_t cap) : spec_(spec), bits_(key_bits(*spec.entry)) {
  Integer ord = group_order(spec);
  if (ord > Integer(static_cast<std::int64_t>(cap))) {
    throw Unenumerable(spec.label() + " has order " + ord.to_string() + ", above the enumeration cap " +
                       std::to_string(cap) + "; ingest a character table fixture instead");
  }
  if (bits_ * spec.dim * spec.dim > 128) throw Unenumerable(spec.label() + " elements do not fit a 128-bit key");
  auto gens = generators(spec);
  const auto& f = *spec.entry;
  Matrix id = Matrix::identity(f, spec.dim);
  elements_.push_back(id);
  index_.emplace(key(id), 0);
  for (std::size_t cur = 0; cur < elements_.size(); ++cur) {
    for (const auto& g : gens) {
      Matrix y = elements_[cur] * g;
      ElementKey k = key(y);
      if (index_.count(k)) continue;
      index_.emplace(k, elements_.size());
      elements_.push_back(std::move(y));
      if (elements_.size() > cap) throw Unenumerable(spec.label() + " exceeds the enumeration cap");
    }
  }
  if (Integer(static_cast<std::int64_t>(elements_.size())) != ord) {
    throw IntegrityError("enumerated " + std::to_string(elements_.size()) + " elements of " + spec.label() +
                         ", expected " + ord.to_string());
  }
  const std::size_t total = elements_.size();
  inverse_.resize(total);
  for (std::size_t i = 0; i < total; ++i) inverse_[i] = index_of(elements_[i].inverse());

  std::vector<Matrix> gen_inv;
  for (const auto& g : gens) gen_inv.push_back(g.inverse());
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> tmp_class(total, kUnset);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t u = 0; u < total; ++u) {
    if (tmp_class[u] != kUnset) continue;
    const std::size_t id_c = orbits.size();
    std::vector<std::size_t> orbit{u};
    tmp_class[u] = id_c;
    for (std::size_t h = 0; h < orbit.size(); ++h) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        std::size_t v = index_of(gens[g] * elements_[orbit[h]] * gen_inv[g]);
        if (tmp_class[v] == kUnset) {
          tmp_class[v] = id_c;
          orbit.push_back(v);
        }
      }
    }
    orbits.push_back(std::move(orbit));
  }
  struct ClassInfo {
    std::uint64_t order;
    std::size_t size;
    ElementKey min_key;
    std::size_t rep;
    std::size_t old;
  };
  std::vector<ClassInfo> info;
  for (std::size_t c = 0; c < orbits.size(); ++c) {
    std::size_t rep = orbits[c][0];
    ElementKey mk = key(elements_[rep]);
    for (std::size_t v : orbits[c]) {
      ElementKey k = key(elements_[v]);
      if (k < mk) {
        mk = k;
        rep = v;
      }
    }
    std::uint64_t o = 1;
    Matrix x = elements_[rep];
    while (!x.is_identity()) {
      x = x * elements_[rep];
      ++o;
    }
    info.push_back({o, orbits[c].size(), mk, rep, c});
  }
  std::sort(info.begin(), info.end(), [](const ClassInfo& a, const ClassInfo& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.size != b.size) return a.size < b.size;
    return a.min_key < b.min_key;
  });
  std::vector<std::size_t> remap(orbits.size());
  class_of_.resize(total);
  for (std::size_t c = 0; c < info.size(); ++c) {
    remap[info[c].old] = c;
    reps_.push_back(info[c].rep);
    orders_.push_back(info[c].order);
    auto members = orbits[info[c].old];
    std::sort(members.begin(), members.end());
    members_.push_back(std::move(members));
  }
  for (std::size_t i = 0; i < total; ++i) class_of_[i] = remap[tmp_class[i]];
}

ElementKey EnumeratedGroup::key(const Matrix& m) const {
  ElementKey k = 0;
  for (FieldCode c : m.entries()) k = (k << bits_) | c;
  return k;
}

std::size_t EnumeratedGroup::index_of(const Matrix& m) const {
  if (m.size() != spec_.dim || &m.field() != spec_.entry) throw InvalidArgument("matrix does not match the group");
  auto it = index_.find(key(m));
  if (it == index_.end()) throw InvalidArgument("matrix is not an element of " + spec_.label());
  return it->second;
}

std::size_t EnumeratedGroup::power_class(std::size_t c, std::uint64_t k) const {
  return class_of(representative(c).pow(k % orders_[c]));
}

std::uint64_t EnumeratedGroup::exponent() const {
  std::uint64_t e = 1;
  for (auto o : orders_) e = lcm_u64(e, o);
  return e;
}

std::optional<Matrix> EnumeratedGroup::transporter(const Matrix& a, const Matrix& b) const {
  if (class_of(a) != class_of(b)) return std::nullopt;
  for (const auto& x : elements_) {
    if (x * a == b * x) return x;
  }
  return std::nullopt;
}

std::size_t count_classes_prime_to(const EnumeratedGroup& g, std::uint64_t m) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < g.class_count(); ++c) n += gcd_u64(g.class_order(c), m) == 1;
  return n;
}

std::shared_ptr<const EnumeratedGroup> conjugacy_data(const GroupSpec& spec, std::uint64_t cap) {
  static std::mutex mutex;
  static std::map<std::tuple<Family, unsigned, std::uint64_t>, std::shared_ptr<const EnumeratedGroup>> cache;
  const auto id = std::make_tuple(spec.family, spec.n, spec.q);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
  }
  auto made = std::make_shared<const EnumeratedGroup>(spec, cap);
  std::lock_guard lock(mutex);
  return cache.emplace(id, std::move(made)).first->second;
}

// ---------------------------------------------------------------------------

bool verify_witness(const GroupSpec& spec, const Matrix& a, const Matrix& b, const Matrix& x) {
  return contains(spec, x) && x * a == b * x;
}

namespace {

bool try_candidate(const GroupSpec& spec, const Matrix& a, const Matrix& b, const Matrix& x) {
  if (&x.field() != spec.entry || x.size() != spec.dim) return false;
  if (!(x * a == b * x)) return false;
  return contains(spec, x);
}

std::optional<Matrix> signed_permutation_search(const GroupSpec& spec, const Matrix& a, const Matrix& b) {
  const auto& f = *spec.entry;
  const std::size_t n = spec.dim;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const FieldCode minus = f.neg(1);
  do {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
      Matrix x(f, n);
      for (std::size_t i = 0; i < n; ++i) x.set(i, perm[i], (signs >> i) & 1 ? minus : 1);
      if (try_candidate(spec, a, b, x)) return x;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

enum class SearchOutcome { Found, Exhausted, OverBudget };

// Solves X a_S = b_S X on the coordinates S and enumerates the solution space.
SearchOutcome intertwiner_search(const GroupSpec& spec, const Matrix& a, const Matrix& b,
                                 const std::vector<std::size_t>& coords, std::uint64_t budget, Matrix& found) {
  const FieldDescriptor& entry = *spec.entry;
  const std::size_t s = coords.size();
  bool use_base = spec.entry != spec.base;
  if (spec.unitary()) use_base = false;
  if (use_base) {
    for (std::size_t i : coords)
      for (std::size_t j : coords) {
        if (!lies_in(a.element(i, j), *spec.base) || !lies_in(b.element(i, j), *spec.base)) use_base = false;
      }
    if (spec.family == Family::SOminus) {
      for (std::size_t i : coords)
        if (i == spec.n - 1 || i == spec.n) use_base = false;
    }
  }
  const FieldDescriptor& f = use_base ? *spec.base : entry;
  auto entry_of = [&](const Matrix& m, std::size_t i, std::size_t j) {
    return use_base ? restrict_to(m.element(coords[i], coords[j]), f).code() : m.at(coords[i], coords[j]);
  };
  const std::size_t vars = s * s;
  std::vector<FieldCode> sys(vars * vars, 0);
  // Row (r, c2): sum_c X[r][c] a[c][c2] - sum_c b[r][c] X[c][c2].
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c2 = 0; c2 < s; ++c2) {
      const std::size_t row = r * s + c2;
      for (std::size_t c = 0; c < s; ++c) {
        std::size_t v1 = r * s + c;
        sys[row * vars + v1] = f.add(sys[row * vars + v1], entry_of(a, c, c2));
        std::size_t v2 = c * s + c2;
        sys[row * vars + v2] = f.sub(sys[row * vars + v2], entry_of(b, r, c));
      }
    }
  }
  auto basis = nullspace(f, vars, vars, std::move(sys));
  const std::size_t d = basis.size();
  if (d == 0) return SearchOutcome::Exhausted;
  long double count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= static_cast<long double>(f.q());
  if (count > static_cast<long double>(budget)) return SearchOutcome::OverBudget;
  std::vector<FieldCode> coef(d, 0);
  while (true) {
    // advance mixed-radix counter; the all-zero combination is skipped
    std::size_t pos = 0;
    while (pos < d && ++coef[pos] == f.q()) coef[pos++] = 0;
    if (pos == d) break;
    Matrix xs(f, s);
    for (std::size_t t = 0; t < d; ++t) {
      if (coef[t] == 0) continue;
      for (std::size_t v = 0; v < vars; ++v) {
        if (basis[t][v] != 0) xs.set(v / s, v % s, f.add(xs.at(v / s, v % s), f.mul(coef[t], basis[t][v])));
      }
    }
    if (xs.det() == 0) continue;
    Matrix full = corner_embed(xs.embedded(entry), spec.dim, coords);
    if (try_candidate(spec, a, b, full)) {
      found = std::move(full);
      return SearchOutcome::Found;
    }
  }
  return SearchOutcome::Exhausted;
}

std::vector<std::size_t> moved_coordinates(const GroupSpec& spec, const Matrix& a, const Matrix& b) {
  const std::size_t n = spec.dim;
  std::vector<bool> moved(n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FieldCode id = i == j ? 1 : 0;
      if (a.at(i, j) != id || b.at(i, j) != id) moved[i] = moved[j] = true;
    }
  for (std::size_t i = 0; i < n; ++i)
    if (moved[i]) moved[n - 1 - i] = true;
  if (spec.family == Family::SOminus && (moved[spec.n - 1] || moved[spec.n])) moved[spec.n - 1] = moved[spec.n] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (moved[i]) out.push_back(i);
  return out;
}

}  // namespace

ConjugacyResult is_conjugate(const GroupSpec& spec, const Matrix& a, const Matrix& b, const ConjugacyOptions& options) {
  if (!contains(spec, a) || !contains(spec, b)) throw InvalidArgument("is_conjugate: arguments must lie in " + spec.label());
  const auto& f = *spec.entry;
  if (a == b) return ConjugacyWitness{Matrix::identity(f, spec.dim), "identity"};
  if (element_order(a) != element_order(b)) return NotConjugate{"element order"};
  if (!(a.characteristic_polynomial() == b.characteristic_polynomial())) {
    return NotConjugate{"characteristic polynomial"};
  }
  for (const auto& h : options.hints) {
    if (try_candidate(spec, a, b, h)) return ConjugacyWitness{h, "supplied conjugator"};
  }
  std::vector<Matrix> forms{form_j(f, spec.dim), form_j(f, spec.dim).scaled(f.neg(1))};
  if (spec.dim % 2 == 0) {
    forms.push_back(form_i(f, spec.dim / 2));
    forms.push_back(form_i(f, spec.dim / 2).scaled(f.neg(1)));
  }
  for (const auto& x : forms) {
    if (try_candidate(spec, a, b, x)) return ConjugacyWitness{x, "form matrix"};
  }
  if (spec.dim <= 5) {
    if (auto x = signed_permutation_search(spec, a, b)) return ConjugacyWitness{*x, "signed permutation"};
  }
  std::string reason;
  Matrix found(f, spec.dim);
  auto coords = moved_coordinates(spec, a, b);
  if (coords.size() < spec.dim) {
    auto r = intertwiner_search(spec, a, b, coords, options.search_budget, found);
    if (r == SearchOutcome::Found) return ConjugacyWitness{found, "restricted intertwiner"};
    if (r == SearchOutcome::OverBudget) reason += "restricted intertwiner space over budget; ";
  }
  std::vector<std::size_t> all(spec.dim);
  std::iota(all.begin(), all.end(), 0);
  auto r = intertwiner_search(spec, a, b, all, options.search_budget, found);
  if (r == SearchOutcome::Found) return ConjugacyWitness{found, "intertwiner"};
  if (r == SearchOutcome::Exhausted) return NotConjugate{"no invertible intertwiner in the group"};
  reason += "intertwiner space over budget; ";
  if (options.allow_enumeration && group_order(spec) <= Integer(static_cast<std::int64_t>(options.enumeration_cap))) {
    auto g = conjugacy_data(spec, options.enumeration_cap);
    if (auto x = g->transporter(a, b)) return ConjugacyWitness{*x, "transporter scan"};
    return NotConjugate{"conjugacy class"};
  }
  return Inconclusive{reason + "group exceeds enumeration cap"};
}

// ---------------------------------------------------------------------------

namespace {

Matrix dual_block(const Matrix& g) {
  Matrix j = form_j(g.field(), g.size());
  return j * g.transpose().inverse() * j;
}

}  // namespace

Matrix embed_phi(const Matrix& g) { return block_diagonal({g, dual_block(g)}); }

Matrix embed_psi_odd(const Matrix& g) {
  return block_diagonal({g, Matrix::identity(g.field(), 1), dual_block(g)});
}

Matrix embed_psi_minus(const Matrix& g) {
  return block_diagonal({g, Matrix::identity(g.field(), 2), dual_block(g)});
}

}  // namespace blockforge
