#include "blockforge/finite_field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <sstream>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"
#include "blockforge/polynomial.hpp"
#include "conway_data.hpp"

namespace blockforge {

namespace {

constexpr std::uint64_t kTableBound = std::uint64_t{1} << 16;
constexpr std::uint32_t kNoZech = 0xffffffffu;

using Coeffs = std::vector<std::uint64_t>;

// Polynomials over GF(p) as coefficient vectors (low degree first), used only
// while the descriptor itself is being built.
Coeffs mulmod_poly(const Coeffs& a, const Coeffs& b, const Coeffs& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  Coeffs prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  for (std::size_t d = prod.size(); d-- > k;) {
    std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= k; ++i) {
      std::uint64_t t = mulmod(c, f[i], p);
      prod[d - k + i] = (prod[d - k + i] + p - t) % p;
    }
  }
  prod.resize(k, 0);
  return prod;
}

Coeffs powmod_x(std::uint64_t e, const Coeffs& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  Coeffs result(k, 0);
  result[0] = 1;
  Coeffs base(k, 0);
  if (k == 1) {
    base[0] = (p - f[0]) % p;
  } else {
    base[1] = 1;
  }
  while (e > 0) {
    if (e & 1) result = mulmod_poly(result, base, f, p);
    base = mulmod_poly(base, base, f, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Coeffs& c) {
  if (c.empty() || c[0] != 1) return false;
  return std::all_of(c.begin() + 1, c.end(), [](std::uint64_t v) { return v == 0; });
}

bool x_is_primitive(const Coeffs& f, std::uint64_t p, std::uint64_t q, const std::vector<std::uint64_t>& primes) {
  if (f[0] == 0) return false;
  if (!is_one(powmod_x(q - 1, f, p))) return false;
  for (std::uint64_t r : primes) {
    if (is_one(powmod_x((q - 1) / r, f, p))) return false;
  }
  return true;
}

// A reducible f leaves fewer than q-1 units in GF(p)[x]/f, so an element of order
// q-1 certifies irreducibility as well.
Coeffs least_primitive_modulus(std::uint64_t p, unsigned k, std::uint64_t q, const std::vector<std::uint64_t>& primes) {
  Coeffs f(k + 1, 0);
  f[k] = 1;
  for (std::uint64_t code = 1; code < q; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = c % p;
      c /= p;
    }
    if (x_is_primitive(f, p, q, primes)) return f;
  }
  throw IntegrityError("no primitive polynomial found for GF(" + std::to_string(q) + ")");
}

std::vector<std::uint64_t> prime_list(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto [r, e] : factorize(n)) out.push_back(r);
  return out;
}

}  // namespace

FieldDescriptor::FieldDescriptor(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus, bool conway)
    : p_(p), k_(k), q_(checked_pow(p, k)), modulus_(std::move(modulus)), conway_(conway) {
  if (modulus_.size() != k + 1 || modulus_.back() != 1) {
    throw InvalidArgument("field modulus must be monic of degree " + std::to_string(k));
  }
  q_minus_1_primes_ = prime_list(q_ - 1);
  generator_ = k_ == 1 ? (p_ - modulus_[0]) % p_ : p_;
  if (q_ <= kTableBound && k_ > 1) {
    const std::uint64_t n = q_ - 1;
    exp_.resize(n);
    log_.assign(q_, 0);
    FieldCode x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<std::uint32_t>(i);
      x = generic_mul(x, generator_);
    }
    if (x != 1) throw IntegrityError("field generator is not primitive for " + label());
    zech_.assign(n, kNoZech);
    for (std::uint64_t i = 0; i < n; ++i) {
      FieldCode s = generic_add(1, exp_[i], false);
      if (s != 0) zech_[i] = log_[s];
    }
  }
}

std::string FieldDescriptor::label() const { return "GF(" + std::to_string(q_) + ")"; }

std::vector<std::uint64_t> FieldDescriptor::digits(FieldCode a) const {
  std::vector<std::uint64_t> out(k_, 0);
  if (k_ == 1) {
    out[0] = a;
    return out;
  }
  for (unsigned i = 0; i < k_ && a != 0; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

FieldCode FieldDescriptor::from_digits(std::span<const std::uint64_t> d) const {
  if (d.size() > k_) throw InvalidArgument("too many coefficients for " + label());
  FieldCode code = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] >= p_) throw InvalidArgument("coefficient out of range for " + label());
    code = code * p_ + d[i];
  }
  return code;
}

FieldCode FieldDescriptor::from_integer(std::int64_t v) const {
  __int128 r = static_cast<__int128>(v) % static_cast<__int128>(p_);
  if (r < 0) r += p_;
  return static_cast<FieldCode>(r);
}

FieldCode FieldDescriptor::generic_add(FieldCode a, FieldCode b, bool subtract) const {
  if (p_ == 2) return a ^ b;
  FieldCode out = 0, pw = 1;
  for (unsigned i = 0; i < k_ && (a != 0 || b != 0); ++i) {
    std::uint64_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    std::uint64_t s = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
    out += s * pw;
    if (i + 1 < k_) pw *= p_;
  }
  return out;
}

FieldCode FieldDescriptor::generic_mul(FieldCode a, FieldCode b) const {
  if (a == 0 || b == 0) return 0;
  if (p_ == 2) {
    // carry-less product, then reduction by the modulus bit pattern
    std::uint64_t low = 0;
    for (unsigned j = 0; j < k_; ++j) low |= modulus_[j] << j;
    unsigned __int128 prod = 0;
    for (unsigned i = 0; i < k_; ++i) {
      if ((b >> i) & 1) prod ^= static_cast<unsigned __int128>(a) << i;
    }
    for (unsigned d = 2 * k_ - 1; d-- > k_;) {
      if ((prod >> d) & 1) prod ^= (static_cast<unsigned __int128>(1) << d) ^ (static_cast<unsigned __int128>(low) << (d - k_));
    }
    if ((prod >> k_) & 1) prod ^= (static_cast<unsigned __int128>(1) << k_) ^ low;
    return static_cast<FieldCode>(prod);
  }
  auto da = digits(a), db = digits(b);
  return from_digits(mulmod_poly(da, db, modulus_, p_));
}

FieldCode FieldDescriptor::add(FieldCode a, FieldCode b) const {
  if (k_ == 1) {
    std::uint64_t s = a + b;
    return (s >= p_ || s < a) ? s - p_ : s;
  }
  if (a == 0) return b;
  if (b == 0) return a;
  if (!exp_.empty()) {
    std::uint32_t la = log_[a], lb = log_[b];
    if (la > lb) std::swap(la, lb);
    std::uint32_t z = zech_[lb - la];
    if (z == kNoZech) return 0;
    std::uint64_t e = std::uint64_t{la} + z;
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  return generic_add(a, b, false);
}

FieldCode FieldDescriptor::neg(FieldCode a) const {
  if (a == 0 || p_ == 2) return a;
  if (k_ == 1) return p_ - a;
  if (!exp_.empty()) {
    std::uint64_t e = log_[a] + (q_ - 1) / 2;
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  return generic_add(0, a, true);
}

FieldCode FieldDescriptor::sub(FieldCode a, FieldCode b) const {
  if (k_ == 1) return a >= b ? a - b : a + (p_ - b);
  return add(a, neg(b));
}

FieldCode FieldDescriptor::mul(FieldCode a, FieldCode b) const {
  if (k_ == 1) return mulmod(a, b, p_);
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) {
    std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  return generic_mul(a, b);
}

FieldCode FieldDescriptor::inv(FieldCode a) const {
  if (a == 0) throw InvalidArgument("division by zero in " + label());
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

FieldCode FieldDescriptor::pow(FieldCode a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  if (k_ == 1) return powmod(a, e, p_);
  if (!exp_.empty()) {
    std::uint64_t l = static_cast<std::uint64_t>(static_cast<unsigned __int128>(log_[a]) * (e % (q_ - 1)) % (q_ - 1));
    return exp_[l];
  }
  FieldCode r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldCode FieldDescriptor::frobenius(FieldCode a, unsigned times) const {
  times %= k_;
  for (unsigned i = 0; i < times; ++i) a = pow(a, p_);
  return a;
}

std::uint64_t FieldDescriptor::order(FieldCode a) const {
  if (a == 0) throw InvalidArgument("zero has no multiplicative order");
  if (!exp_.empty()) return (q_ - 1) / gcd_u64(q_ - 1, log_[a]);
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t r : q_minus_1_primes_) {
    while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
  }
  return ord;
}

// ---------------------------------------------------------------------------

namespace {

struct Registry {
  std::shared_mutex mutex;
  std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<FieldDescriptor>> fields;
  std::map<std::pair<const FieldDescriptor*, const FieldDescriptor*>, FieldCode> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

const ConwayEntry* find_conway(std::uint64_t p, unsigned k) {
  static const std::map<std::pair<std::uint64_t, unsigned>, const ConwayEntry*> index = [] {
    std::map<std::pair<std::uint64_t, unsigned>, const ConwayEntry*> m;
    for (const auto& e : bundled_conway_table()) m[{e.p, e.k}] = &e;
    return m;
  }();
  auto it = index.find({p, k});
  return it == index.end() ? nullptr : it->second;
}

}  // namespace

const FieldDescriptor& field_create(std::uint64_t p, unsigned k, std::uint64_t bound) {
  if (k == 0) throw InvalidArgument("field degree must be positive");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  std::uint64_t q;
  try {
    q = checked_pow(p, k);
  } catch (const BoundExceeded&) {
    throw BoundExceeded("GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds 64-bit field bound");
  }
  if (q > bound) throw BoundExceeded("GF(" + std::to_string(q) + ") exceeds configured bound " + std::to_string(bound));

  Registry& reg = registry();
  {
    std::shared_lock lock(reg.mutex);
    auto it = reg.fields.find({p, k});
    if (it != reg.fields.end()) return *it->second;
  }
  std::unique_ptr<FieldDescriptor> made;
  if (const ConwayEntry* c = find_conway(p, k)) {
    made = std::make_unique<FieldDescriptor>(p, k, c->coefficients, true);
  } else {
    auto primes = prime_list(q - 1);
    made = std::make_unique<FieldDescriptor>(p, k, least_primitive_modulus(p, k, q, primes), false);
  }
  std::unique_lock lock(reg.mutex);
  auto [it, inserted] = reg.fields.try_emplace({p, k}, std::move(made));
  return *it->second;
}

const FieldDescriptor& field_of_order(std::uint64_t q) {
  auto [p, k] = prime_power_decompose(q);
  if (p == 0) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  return field_create(p, k);
}

// ---------------------------------------------------------------------------

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_) throw InvalidArgument("field mismatch: " + field_->label() + " vs " + o.field_->label());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->add(code_, o.code_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->sub(code_, o.code_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->mul(code_, o.code_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {*field_, field_->div(code_, o.code_)};
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e >= 0) return {*field_, field_->pow(code_, static_cast<std::uint64_t>(e))};
  return {*field_, field_->pow(field_->inv(code_), static_cast<std::uint64_t>(-(e + 1)) + 1)};
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
  const auto& f = x.field();
  if (f.is_prime_field()) return os << x.code();
  auto d = x.coefficients();
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << 'z';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os;
}

FieldElement primitive_root_of_unity(const FieldDescriptor& f, std::uint64_t m) {
  if (m == 0 || (f.q() - 1) % m != 0) {
    throw InvalidArgument(std::to_string(m) + " does not divide " + std::to_string(f.q() - 1));
  }
  return {f, f.pow(f.generator(), (f.q() - 1) / m)};
}

FieldElement embedding_image(const FieldDescriptor& sub, const FieldDescriptor& super) {
  if (sub.p() != super.p() || super.k() % sub.k() != 0) {
    throw InvalidArgument(sub.label() + " is not a subfield of " + super.label());
  }
  if (&sub == &super) return {super, super.generator()};
  Registry& reg = registry();
  {
    std::shared_lock lock(reg.mutex);
    auto it = reg.embeddings.find({&sub, &super});
    if (it != reg.embeddings.end()) return {super, it->second};
  }
  Polynomial mod(super, {});
  {
    std::vector<FieldCode> c;
    for (auto v : sub.modulus()) c.push_back(super.from_integer(static_cast<std::int64_t>(v)));
    mod = Polynomial(super, std::move(c));
  }
  FieldCode img = super.pow(super.generator(), (super.q() - 1) / (sub.q() - 1));
  if (!mod.evaluate(FieldElement(super, img)).is_zero()) {
    auto roots = blockforge::roots(mod);
    if (roots.empty()) throw IntegrityError("modulus of " + sub.label() + " has no root in " + super.label());
    img = roots.front().first.code();
  }
  std::unique_lock lock(reg.mutex);
  reg.embeddings.emplace(std::make_pair(&sub, &super), img);
  return {super, img};
}

FieldElement embed(const FieldElement& x, const FieldDescriptor& super) {
  const FieldDescriptor& sub = x.field();
  if (&sub == &super) return x;
  if (sub.is_prime_field()) {
    if (sub.p() != super.p()) throw InvalidArgument("characteristic mismatch");
    return {super, x.code()};
  }
  FieldElement h = embedding_image(sub, super);
  auto d = x.coefficients();
  FieldElement acc = FieldElement::zero(super);
  for (std::size_t i = d.size(); i-- > 0;) {
    acc = acc * h + FieldElement(super, d[i]);
  }
  return acc;
}

bool lies_in(const FieldElement& x, const FieldDescriptor& sub) {
  const FieldDescriptor& f = x.field();
  if (sub.p() != f.p() || f.k() % sub.k() != 0) return false;
  return f.in_subfield(x.code(), sub.k());
}

FieldElement restrict_to(const FieldElement& x, const FieldDescriptor& sub) {
  const FieldDescriptor& f = x.field();
  if (&sub == &f) return x;
  if (!lies_in(x, sub)) throw InvalidArgument("element does not lie in " + sub.label());
  if (sub.is_prime_field()) return {sub, x.code()};
  // Solve x = sum c_i h^i over GF(p), h the image of the generator of `sub`.
  const std::uint64_t p = f.p();
  const unsigned rows = f.k(), cols = sub.k();
  FieldElement h = embedding_image(sub, f);
  std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(cols + 1, 0));
  FieldElement pw = FieldElement::one(f);
  for (unsigned j = 0; j < cols; ++j) {
    auto d = pw.coefficients();
    for (unsigned i = 0; i < rows; ++i) m[i][j] = d[i];
    pw = pw * h;
  }
  auto xd = x.coefficients();
  for (unsigned i = 0; i < rows; ++i) m[i][cols] = xd[i];
  std::vector<int> pivot_row(cols, -1);
  unsigned r = 0;
  for (unsigned c = 0; c < cols && r < rows; ++c) {
    unsigned piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::uint64_t inv = powmod(m[r][c], p - 2, p);
    for (auto& v : m[r]) v = mulmod(v, inv, p);
    for (unsigned i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::uint64_t t = m[i][c];
      for (unsigned j = 0; j <= cols; ++j) m[i][j] = (m[i][j] + p - mulmod(t, m[r][j], p)) % p;
    }
    pivot_row[c] = static_cast<int>(r++);
  }
  std::vector<std::uint64_t> coeffs(cols, 0);
  for (unsigned c = 0; c < cols; ++c) {
    if (pivot_row[c] >= 0) coeffs[c] = m[pivot_row[c]][cols];
  }
  return {sub, sub.from_digits(coeffs)};
}

// ---------------------------------------------------------------------------

std::vector<ConwayEntry> parse_conway_table(std::string_view text) {
  std::vector<ConwayEntry> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::uint64_t> nums;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
      if (pos >= line.size()) break;
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
      if (ec != std::errc{} || ptr == line.data() + pos) throw ParseError("bad integer in Conway table", line_no);
      pos = static_cast<std::size_t>(ptr - line.data());
      if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
        throw ParseError("bad integer in Conway table", line_no);
      }
      nums.push_back(v);
    }
    if (nums.empty()) continue;
    if (nums.size() < 4) throw ParseError("Conway line needs p, k and k+1 coefficients", line_no);
    ConwayEntry e{nums[0], static_cast<unsigned>(nums[1]), {}};
    if (e.k == 0 || nums.size() != e.k + 3) throw ParseError("Conway line has wrong coefficient count", line_no);
    e.coefficients.assign(nums.begin() + 2, nums.end());
    if (e.coefficients.back() != 1) throw ParseError("Conway polynomial must be monic", line_no);
    for (auto c : e.coefficients) {
      if (c >= e.p) throw ParseError("Conway coefficient out of range", line_no);
    }
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<ConwayEntry>& bundled_conway_table() {
  static const std::vector<ConwayEntry> table = parse_conway_table(detail::bundled_conway_text());
  return table;
}

}  // namespace blockforge
