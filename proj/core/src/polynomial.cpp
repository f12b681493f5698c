#include "blockforge/polynomial.hpp"

#include <algorithm>

#include "blockforge/error.hpp"
#include "blockforge/number_theory.hpp"

namespace blockforge {

Polynomial::Polynomial(const FieldDescriptor& f, std::vector<FieldCode> coeffs) : field_(&f), c_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::linear(const FieldElement& a) {
  const auto& f = a.field();
  return {f, {f.neg(a.code()), 1}};
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  return scaled(field_->inv(c_.back()));
}

Polynomial Polynomial::scaled(FieldCode s) const {
  std::vector<FieldCode> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->mul(c_[i], s);
  return {*field_, std::move(out)};
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<FieldCode> out(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->add(coeff(i), o.coeff(i));
  return {*field_, std::move(out)};
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<FieldCode> out(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->sub(coeff(i), o.coeff(i));
  return {*field_, std::move(out)};
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return zero(*field_);
  std::vector<FieldCode> out(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      out[i + j] = field_->add(out[i + j], field_->mul(c_[i], o.c_[j]));
    }
  }
  return {*field_, std::move(out)};
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
  if (degree() < d.degree()) return {zero(*field_), *this};
  std::vector<FieldCode> r = c_;
  const std::size_t dd = d.c_.size() - 1;
  std::vector<FieldCode> quo(r.size() - dd, 0);
  FieldCode lead_inv = field_->inv(d.c_.back());
  for (std::size_t i = r.size(); i-- > dd;) {
    FieldCode c = r[i];
    if (c == 0) continue;
    FieldCode t = field_->mul(c, lead_inv);
    quo[i - dd] = t;
    for (std::size_t j = 0; j <= dd; ++j) {
      r[i - dd + j] = field_->sub(r[i - dd + j], field_->mul(t, d.c_[j]));
    }
  }
  r.resize(dd);
  return {Polynomial(*field_, std::move(quo)), Polynomial(*field_, std::move(r))};
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return zero(*field_);
  std::vector<FieldCode> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    out[i - 1] = field_->mul(c_[i], field_->from_integer(static_cast<std::int64_t>(i % field_->p())));
  }
  return {*field_, std::move(out)};
}

FieldElement Polynomial::evaluate(const FieldElement& x) const {
  if (&x.field() != field_) throw InvalidArgument("evaluation point lies in a different field");
  FieldCode acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x.code()), c_[i]);
  return {*field_, acc};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial powmod(Polynomial base, std::uint64_t e, const Polynomial& mod) {
  Polynomial result = Polynomial::constant(mod.field(), 1) % mod;
  base = base % mod;
  while (e > 0) {
    if (e & 1) result = (result * base) % mod;
    e >>= 1;
    if (e > 0) base = (base * base) % mod;
  }
  return result;
}

namespace {

// x^(Q^times) mod m, Q the field size.
Polynomial x_power_q(const Polynomial& m, unsigned times) {
  const auto& f = m.field();
  Polynomial h = Polynomial::x(f) % m;
  for (unsigned i = 0; i < times; ++i) h = powmod(h, f.q(), m);
  return h;
}

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const Polynomial& g, std::vector<FieldCode>& out) {
  const auto& f = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(f.neg(g.coeff(0)));
    return;
  }
  for (FieldCode a = 0; a < f.q(); ++a) {
    Polynomial h = Polynomial::zero(f);
    if (f.p() == 2) {
      // Absolute trace of a*x.
      Polynomial t = Polynomial(f, {0, a == 0 ? 1 : a}) % g;
      Polynomial acc = t;
      const unsigned total = f.k();
      for (unsigned i = 1; i < total; ++i) {
        t = (t * t) % g;
        acc = acc + t;
      }
      h = gcd(g, acc);
    } else {
      Polynomial s = powmod(Polynomial(f, {a, 1}), (f.q() - 1) / 2, g);
      h = gcd(g, s - Polynomial::constant(f, 1));
    }
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, out);
      split_linear(g / h, out);
      return;
    }
  }
  throw IntegrityError("failed to split polynomial into linear factors");
}

}  // namespace

std::vector<std::pair<FieldElement, unsigned>> roots(const Polynomial& p) {
  if (p.is_zero()) throw InvalidArgument("roots of the zero polynomial");
  const auto& f = p.field();
  std::vector<std::pair<FieldElement, unsigned>> out;
  if (p.degree() <= 0) return out;
  Polynomial m = p.monic();
  Polynomial lin = gcd(m, x_power_q(m, 1) - Polynomial::x(f));
  std::vector<FieldCode> rs;
  split_linear(lin, rs);
  std::sort(rs.begin(), rs.end());
  for (FieldCode r : rs) {
    Polynomial d = Polynomial::linear(FieldElement(f, r));
    unsigned mult = 0;
    while (true) {
      auto [quo, rem] = m.divmod(d);
      if (!rem.is_zero()) break;
      m = std::move(quo);
      ++mult;
    }
    out.emplace_back(FieldElement(f, r), mult);
  }
  return out;
}

std::vector<unsigned> irreducible_factor_degrees(const Polynomial& p) {
  if (p.is_zero()) throw InvalidArgument("factor degrees of the zero polynomial");
  const auto& f = p.field();
  std::vector<unsigned> out;
  Polynomial rest = p.monic();
  Polynomial h = Polynomial::x(f);
  for (unsigned i = 1; rest.degree() > 0; ++i) {
    h = powmod(h, f.q(), rest);
    Polynomial g = gcd(rest, h - Polynomial::x(f));
    if (g.degree() > 0) {
      out.push_back(i);
      while (true) {
        Polynomial c = gcd(rest, g);
        if (c.degree() <= 0) break;
        rest = rest / c;
      }
      h = h % rest;
    }
  }
  return out;
}

Polynomial embed(const Polynomial& p, const FieldDescriptor& super) {
  std::vector<FieldCode> out;
  out.reserve(p.coefficients().size());
  for (FieldCode c : p.coefficients()) out.push_back(embed(FieldElement(p.field(), c), super).code());
  return {super, std::move(out)};
}

}  // namespace blockforge
