#include "blockforge/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "blockforge/error.hpp"
#include "blockforge/finite_field.hpp"
#include "blockforge/matrix.hpp"
#include "blockforge/number_theory.hpp"
#include "blockforge/polynomial.hpp"

namespace blockforge {

namespace {

using Sparse = std::vector<std::pair<std::uint64_t, Integer>>;

// Nonzero exponent-space terms of v written at conductor n.
Sparse sparse_at(const CycInt& v, std::uint64_t n) {
  const std::uint64_t c = v.conductor();
  if (n % c != 0) {
    throw IntegrityError("value " + v.to_string() + " does not lie in Q(zeta_" + std::to_string(n) + ")");
  }
  Sparse out;
  const auto& co = v.coefficients();
  for (std::size_t i = 0; i < co.size(); ++i) {
    if (!co[i].is_zero()) out.emplace_back(i * (n / c), co[i]);
  }
  return out;
}

// acc += w * a * conj(b), all at conductor n; a and b given at conductors n/sa, n/sb.
void accumulate(std::vector<Integer>& acc, const Sparse& a, std::uint64_t sa, const Sparse& b, std::uint64_t sb,
                const Integer& w) {
  const std::uint64_t n = acc.size();
  for (const auto& [ea, ca] : a) {
    Integer wa = w * ca;
    for (const auto& [eb, cb] : b) {
      std::uint64_t idx = (ea * sa + n - (eb * sb) % n) % n;
      acc[idx] += wa * cb;
    }
  }
}

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

void verify_table(const CharacterTable& t, std::size_t full_column_limit) {
  const std::size_t r = t.class_count();
  if (r == 0) throw IntegrityError("table has no classes");
  if (t.orders.size() != r || t.inverse.size() != r || t.values.size() != r) {
    throw IntegrityError("class data lengths disagree with the class count");
  }
  if (t.sizes[0] != Integer(1) || t.orders[0] != 1) throw IntegrityError("class 1 is not the identity class");
  Integer total(0);
  std::uint64_t e = 1;
  for (std::size_t k = 0; k < r; ++k) {
    if (t.sizes[k].sign() <= 0 || !t.order.divisible_by(t.sizes[k])) {
      throw IntegrityError("class size " + t.sizes[k].to_string() + " does not divide the group order");
    }
    total += t.sizes[k];
    if (t.orders[k] == 0) throw IntegrityError("class " + one_based(k) + " has order 0");
    e = lcm_u64(e, t.orders[k]);
    const std::size_t ik = t.inverse[k];
    if (ik >= r || t.inverse[ik] != k) throw IntegrityError("inverse map is not an involution at class " + one_based(k));
    if (t.orders[ik] != t.orders[k] || t.sizes[ik] != t.sizes[k]) {
      throw IntegrityError("classes " + one_based(k) + " and " + one_based(ik) + " are inverse but differ in size or order");
    }
  }
  if (total != t.order) throw IntegrityError("class sizes sum to " + total.to_string() + ", not " + t.order.to_string());
  if (e != t.exponent) throw IntegrityError("exponent " + std::to_string(t.exponent) + " differs from lcm of orders " + std::to_string(e));
  for (std::size_t k = 0; k < r; ++k) {
    if (!(t.values[0][k] == CycInt(1))) throw IntegrityError("first row is not the trivial character");
  }
  Integer squares(0);
  for (std::size_t i = 0; i < r; ++i) {
    if (t.values[i].size() != r) throw IntegrityError("row " + one_based(i) + " has the wrong length");
    if (!t.values[i][0].is_rational() || t.values[i][0].rational_value().sign() <= 0) {
      throw IntegrityError("degree of character " + one_based(i) + " is not a positive integer");
    }
    squares += t.degree(i) * t.degree(i);
    for (std::size_t k = 0; k < r; ++k) {
      if (!(t.values[i][t.inverse[k]] == t.values[i][k].conjugate())) {
        throw IntegrityError("character " + one_based(i) + " at class " + one_based(k) +
                             " is not conjugate to its value on the inverse class");
      }
    }
  }
  if (squares != t.order) throw IntegrityError("sum of squared degrees is " + squares.to_string());

  // Columns grouped by element order form Galois-stable sets, so each group
  // contributes a rational integer to an inner product.
  std::map<std::uint64_t, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < r; ++k) groups[t.orders[k]].push_back(k);
  std::vector<std::vector<Sparse>> sp(r, std::vector<Sparse>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) sp[i][k] = sparse_at(t.values[i][k], t.orders[k]);

  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a; b < r; ++b) {
      Integer sum(0);
      for (const auto& [o, cols] : groups) {
        std::vector<Integer> acc(o, Integer(0));
        for (std::size_t k : cols) accumulate(acc, sp[a][k], 1, sp[b][k], 1, t.sizes[k]);
        CycInt part = CycInt::from_exponent_vector(o, acc);
        if (!part.is_rational()) {
          throw IntegrityError("row orthogonality fails for characters " + one_based(a) + " and " + one_based(b) +
                               " (irrational partial sum)");
        }
        sum += part.rational_value();
      }
      Integer expected = a == b ? t.order : Integer(0);
      if (sum != expected) {
        throw IntegrityError("row orthogonality fails for characters " + one_based(a) + " and " + one_based(b) +
                             ": got " + sum.to_string() + ", expected " + expected.to_string());
      }
    }
  }
  for (std::size_t k = 0; k < r; ++k) {
    const std::uint64_t o = t.orders[k];
    std::vector<Integer> acc(o, Integer(0));
    for (std::size_t i = 0; i < r; ++i) accumulate(acc, sp[i][k], 1, sp[i][k], 1, Integer(1));
    CycInt s = CycInt::from_exponent_vector(o, acc);
    Integer expected = t.order.divexact(t.sizes[k]);
    if (!s.is_rational() || s.rational_value() != expected) {
      throw IntegrityError("column orthogonality fails for class " + one_based(k) + " with itself");
    }
  }
  if (r > full_column_limit) return;
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t l = k + 1; l < r; ++l) {
      const std::uint64_t n = lcm_u64(t.orders[k], t.orders[l]);
      std::vector<Integer> acc(n, Integer(0));
      for (std::size_t i = 0; i < r; ++i) {
        accumulate(acc, sp[i][k], n / t.orders[k], sp[i][l], n / t.orders[l], Integer(1));
      }
      if (!CycInt::from_exponent_vector(n, acc).is_zero()) {
        throw IntegrityError("column orthogonality fails for classes " + one_based(k) + " and " + one_based(l));
      }
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> power_table(std::size_t r, const std::vector<std::uint64_t>& orders,
                                                  const std::function<std::size_t(std::size_t, std::uint64_t)>& pc) {
  std::vector<std::vector<std::size_t>> powers(r);
  for (std::size_t i = 0; i < r; ++i) {
    powers[i].resize(orders[i]);
    for (std::uint64_t s = 0; s < orders[i]; ++s) powers[i][s] = pc(i, s);
  }
  return powers;
}

}  // namespace

ClassStructure class_structure(const EnumeratedGroup& g) {
  ClassStructure cs;
  const std::size_t r = g.class_count();
  cs.label = g.spec().label();
  cs.order = g.order();
  for (std::size_t c = 0; c < r; ++c) {
    cs.sizes.push_back(g.class_size(c));
    cs.orders.push_back(g.class_order(c));
    cs.inverse.push_back(g.inverse_class(c));
  }
  cs.powers = power_table(r, cs.orders, [&](std::size_t c, std::uint64_t s) { return g.power_class(c, s); });
  cs.constants.assign(r * r * r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    const Matrix& z = g.representative(k);
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::size_t y = g.index_of(g.element(g.inverse_index(x)) * z);
      ++cs.constants[(g.class_of_index(x) * r + g.class_of_index(y)) * r + k];
    }
  }
  return cs;
}

ClassStructure class_structure_from_cayley(std::string label, const std::vector<std::vector<std::size_t>>& mul) {
  const std::size_t n = mul.size();
  if (n == 0) throw InvalidArgument("empty Cayley table");
  std::size_t id = n;
  for (std::size_t e = 0; e < n && id == n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mul[e][x] == x && mul[x][e] == x;
    if (ok) id = e;
  }
  if (id == n) throw InvalidArgument("Cayley table has no identity");
  std::vector<std::size_t> inv(n, n), order(n, 1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      if (mul[x][y] == id) inv[x] = y;
    if (inv[x] == n) throw InvalidArgument("Cayley table element without inverse");
    for (std::size_t p = x; p != id; p = mul[p][x]) ++order[x];
    if (x == id) order[x] = 1;
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> tmp(n, kUnset);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t x = 0; x < n; ++x) {
    if (tmp[x] != kUnset) continue;
    std::vector<std::size_t> cl;
    for (std::size_t g = 0; g < n; ++g) {
      std::size_t y = mul[mul[g][x]][inv[g]];
      if (tmp[y] == kUnset) {
        tmp[y] = classes.size();
        cl.push_back(y);
      }
    }
    std::sort(cl.begin(), cl.end());
    classes.push_back(std::move(cl));
  }
  std::vector<std::size_t> perm(classes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    auto ka = std::make_tuple(order[classes[a][0]], classes[a].size(), classes[a][0]);
    auto kb = std::make_tuple(order[classes[b][0]], classes[b].size(), classes[b][0]);
    return ka < kb;
  });
  std::vector<std::size_t> rank(classes.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = i;
  std::vector<std::size_t> cls(n);
  for (std::size_t x = 0; x < n; ++x) cls[x] = rank[tmp[x]];
  const std::size_t r = classes.size();
  ClassStructure cs;
  cs.label = std::move(label);
  cs.order = n;
  for (std::size_t c = 0; c < r; ++c) {
    const auto& members = classes[perm[c]];
    cs.sizes.push_back(members.size());
    cs.orders.push_back(order[members[0]]);
    cs.inverse.push_back(cls[inv[members[0]]]);
  }
  cs.powers = power_table(r, cs.orders, [&](std::size_t c, std::uint64_t s) {
    std::size_t g = classes[perm[c]][0], p = id;
    for (std::uint64_t t = 0; t < s; ++t) p = mul[p][g];
    return cls[p];
  });
  cs.constants.assign(r * r * r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t z = classes[perm[k]][0];
    for (std::size_t x = 0; x < n; ++x) ++cs.constants[(cls[x] * r + cls[mul[inv[x]][z]]) * r + k];
  }
  return cs;
}

std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order) {
  const long double bound = 2.0L * std::sqrt(static_cast<long double>(order));
  for (std::uint64_t p = exponent + 1;; p += exponent) {
    if (static_cast<long double>(p) > bound && is_prime(p)) return p;
  }
}

namespace {

using Vec = std::vector<FieldCode>;

// Reduced row echelon form of a list of vectors; drops zero rows.
std::vector<Vec> rref(const FieldDescriptor& f, std::vector<Vec> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows[0].size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < n && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[lead]);
    FieldCode inv = f.inv(rows[lead][col]);
    for (auto& v : rows[lead]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == lead || rows[i][col] == 0) continue;
      FieldCode c = rows[i][col];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[lead][j]));
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

}  // namespace

CharacterTable compute_table(const ClassStructure& cs) {
  const std::size_t r = cs.class_count();
  std::uint64_t e = 1;
  for (auto o : cs.orders) e = lcm_u64(e, o);
  const std::uint64_t big_p = dixon_prime(e, cs.order);
  const FieldDescriptor& f = field_create(big_p, 1);

  // Common eigenvectors of the class matrices A_i[j][k] = a_{ijk}.
  std::vector<std::vector<Vec>> pending;
  {
    std::vector<Vec> id(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    pending.push_back(std::move(id));
  }
  std::vector<Vec> eigen;
  for (std::size_t i = 1; i < r && !pending.empty(); ++i) {
    std::vector<std::vector<Vec>> next;
    for (auto& w : pending) {
      const std::size_t d = w.size();
      std::vector<std::size_t> piv(d);
      for (std::size_t b = 0; b < d; ++b) {
        piv[b] = 0;
        while (w[b][piv[b]] == 0) ++piv[b];
      }
      Matrix bm(f, d);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          FieldCode s = 0;
          for (std::size_t k = 0; k < r; ++k) {
            if (w[a][k] == 0) continue;
            s = f.add(s, f.mul(f.from_integer(static_cast<std::int64_t>(cs.constant(i, piv[b], k) % big_p)), w[a][k]));
          }
          bm.set(b, a, s);
        }
      }
      auto rts = roots(bm.characteristic_polynomial());
      unsigned mult = 0;
      for (const auto& [x, m] : rts) mult += m;
      if (mult != d) throw IntegrityError("class matrix does not split over GF(" + std::to_string(big_p) + ")");
      if (rts.size() == 1) {
        next.push_back(std::move(w));
        continue;
      }
      std::size_t dims = 0;
      for (const auto& [mu, m] : rts) {
        std::vector<FieldCode> sys(d * d);
        for (std::size_t x = 0; x < d; ++x)
          for (std::size_t y = 0; y < d; ++y) sys[x * d + y] = x == y ? f.sub(bm.at(x, y), mu.code()) : bm.at(x, y);
        auto ns = nullspace(f, d, d, std::move(sys));
        std::vector<Vec> sub;
        for (const auto& yv : ns) {
          Vec v(r, 0);
          for (std::size_t a = 0; a < d; ++a) {
            if (yv[a] == 0) continue;
            for (std::size_t k = 0; k < r; ++k) v[k] = f.add(v[k], f.mul(yv[a], w[a][k]));
          }
          sub.push_back(std::move(v));
        }
        sub = rref(f, std::move(sub));
        dims += sub.size();
        next.push_back(std::move(sub));
      }
      if (dims != d) throw IntegrityError("class matrices are not simultaneously diagonalisable");
    }
    pending.clear();
    for (auto& w : next) {
      if (w.size() == 1) {
        eigen.push_back(std::move(w[0]));
      } else {
        pending.push_back(std::move(w));
      }
    }
  }
  for (auto& w : pending) {
    if (w.size() != 1) throw IntegrityError("class matrices leave a common eigenspace of dimension > 1");
    eigen.push_back(std::move(w[0]));
  }
  if (r == 1) eigen = {Vec{1}};
  if (eigen.size() != r) throw IntegrityError("found " + std::to_string(eigen.size()) + " central characters, expected " + std::to_string(r));

  const FieldCode z = primitive_root_of_unity(f, e).code();
  const std::uint64_t root_bound = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(cs.order))) + 1;
  std::vector<std::vector<CycInt>> rows;
  for (auto& v : eigen) {
    if (v[0] == 0) throw IntegrityError("central character vanishes at the identity");
    FieldCode n0 = f.inv(v[0]);
    for (auto& x : v) x = f.mul(x, n0);
    FieldCode s = 0;
    for (std::size_t i = 0; i < r; ++i) {
      s = f.add(s, f.div(f.mul(v[i], v[cs.inverse[i]]), f.from_integer(static_cast<std::int64_t>(cs.sizes[i] % big_p))));
    }
    FieldCode target = f.div(f.from_integer(static_cast<std::int64_t>(cs.order % big_p)), s);
    std::uint64_t deg = 0;
    for (std::uint64_t d = 1; d <= root_bound; ++d) {
      if (mulmod(d, d, big_p) == target) {
        deg = d;
        break;
      }
    }
    if (deg == 0) throw IntegrityError("no character degree matches the central character");
    Vec chi(r);
    for (std::size_t i = 0; i < r; ++i) {
      chi[i] = f.div(f.mul(v[i], deg % big_p), f.from_integer(static_cast<std::int64_t>(cs.sizes[i] % big_p)));
    }
    std::vector<CycInt> row(r);
    for (std::size_t i = 0; i < r; ++i) {
      const std::uint64_t o = cs.orders[i];
      const FieldCode zo = f.pow(z, e / o);
      const FieldCode zo_inv = f.inv(zo);
      const FieldCode o_inv = f.inv(f.from_integer(static_cast<std::int64_t>(o % big_p)));
      std::vector<Integer> m(o);
      for (std::uint64_t t = 0; t < o; ++t) {
        FieldCode acc = 0, step = f.pow(zo_inv, t), w = 1;
        for (std::uint64_t s2 = 0; s2 < o; ++s2, w = f.mul(w, step)) acc = f.add(acc, f.mul(chi[cs.powers[i][s2]], w));
        acc = f.mul(acc, o_inv);
        if (acc > deg) throw IntegrityError("eigenvalue multiplicity out of range; Dixon prime too small");
        m[t] = Integer(static_cast<std::int64_t>(acc));
      }
      row[i] = CycInt::from_exponent_vector(o, m);
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [&](const std::vector<CycInt>& a, const std::vector<CycInt>& b) {
    auto trivial = [](const std::vector<CycInt>& x) {
      return std::all_of(x.begin(), x.end(), [](const CycInt& v) { return v == CycInt(1); });
    };
    bool ta = trivial(a), tb = trivial(b);
    if (ta != tb) return ta;
    const Integer &da = a[0].rational_value(), &db = b[0].rational_value();
    if (da != db) return da < db;
    for (std::size_t k = 0; k < a.size(); ++k) {
      int c = compare_at(a[k], b[k], e);
      if (c != 0) return c < 0;
    }
    return false;
  });
  CharacterTable t;
  t.label = cs.label;
  t.order = Integer(static_cast<std::int64_t>(cs.order));
  t.exponent = e;
  for (auto s : cs.sizes) t.sizes.emplace_back(static_cast<std::int64_t>(s));
  t.orders = cs.orders;
  t.inverse = cs.inverse;
  t.values = std::move(rows);
  t.source = TableSource::Computed;
  verify_table(t);
  return t;
}

CharacterTable compute_table(const GroupSpec& spec, std::uint64_t cap) {
  return compute_table(class_structure(*conjugacy_data(spec, cap)));
}

// ---------------------------------------------------------------------------

CycInt parse_cyc_value(const std::string& token) {
  if (token.empty()) throw InvalidArgument("empty value");
  if (token[0] != 'c') return CycInt(Integer::parse(token));
  if (token.size() < 5 || token[1] != '(' || token.back() != ')') throw InvalidArgument("malformed value '" + token + "'");
  auto colon = token.find(':');
  if (colon == std::string::npos) throw InvalidArgument("malformed value '" + token + "'");
  std::uint64_t n = 0;
  try {
    n = std::stoull(token.substr(2, colon - 2));
  } catch (const std::exception&) {
    throw InvalidArgument("malformed conductor in '" + token + "'");
  }
  std::vector<Integer> coeffs;
  std::string body = token.substr(colon + 1, token.size() - colon - 2);
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) coeffs.push_back(Integer::parse(part));
  return CycInt::from_coefficients(n, std::move(coeffs));
}

namespace {

template <typename T, typename F>
std::vector<T> read_list(std::istringstream& ls, std::size_t count, std::size_t line, const char* what, F conv) {
  std::vector<T> out;
  std::string tok;
  while (ls >> tok) {
    try {
      out.push_back(conv(tok));
    } catch (const Error& e) {
      throw ParseError(std::string("bad ") + what + " entry '" + tok + "': " + e.what(), line);
    } catch (const std::exception&) {
      throw ParseError(std::string("bad ") + what + " entry '" + tok + "'", line);
    }
  }
  if (out.size() != count) {
    throw ParseError(std::string(what) + " has " + std::to_string(out.size()) + " entries, expected " + std::to_string(count), line);
  }
  return out;
}

}  // namespace

CharacterTable parse_ctx(std::istream& in, const std::string& source_name) {
  CharacterTable t;
  t.source = TableSource::Ingested;
  std::size_t r = 0, line_no = 0;
  bool have_group = false, have_order = false, have_exp = false, have_sizes = false, have_orders = false, have_inverse = false;
  std::string line;
  auto need_r = [&](const std::string& kw) {
    if (r == 0) throw ParseError(kw + " before NCLASSES", line_no);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "GROUP") {
      std::string rest;
      std::getline(ls, rest);
      auto b = rest.find_first_not_of(" \t");
      if (b == std::string::npos) throw ParseError("GROUP needs a label", line_no);
      t.label = rest.substr(b);
      while (!t.label.empty() && std::isspace(static_cast<unsigned char>(t.label.back()))) t.label.pop_back();
      have_group = true;
    } else if (kw == "ORDER") {
      auto v = read_list<Integer>(ls, 1, line_no, "ORDER", [](const std::string& s) { return Integer::parse(s); });
      t.order = v[0];
      if (t.order.sign() <= 0) throw ParseError("ORDER must be positive", line_no);
      have_order = true;
    } else if (kw == "EXPONENT") {
      auto v = read_list<std::uint64_t>(ls, 1, line_no, "EXPONENT", [](const std::string& s) { return std::stoull(s); });
      t.exponent = v[0];
      have_exp = true;
    } else if (kw == "NCLASSES") {
      auto v = read_list<std::uint64_t>(ls, 1, line_no, "NCLASSES", [](const std::string& s) { return std::stoull(s); });
      if (v[0] == 0 || r != 0) throw ParseError("NCLASSES must be positive and given once", line_no);
      r = v[0];
    } else if (kw == "SIZES") {
      need_r(kw);
      t.sizes = read_list<Integer>(ls, r, line_no, "SIZES", [](const std::string& s) { return Integer::parse(s); });
      have_sizes = true;
    } else if (kw == "ORDERS") {
      need_r(kw);
      t.orders = read_list<std::uint64_t>(ls, r, line_no, "ORDERS", [](const std::string& s) { return std::stoull(s); });
      have_orders = true;
    } else if (kw == "INVERSE") {
      need_r(kw);
      auto inv = read_list<std::uint64_t>(ls, r, line_no, "INVERSE", [](const std::string& s) { return std::stoull(s); });
      for (auto x : inv) {
        if (x < 1 || x > r) throw ParseError("INVERSE entry " + std::to_string(x) + " out of range", line_no);
        t.inverse.push_back(x - 1);
      }
      have_inverse = true;
    } else if (kw == "CHAR") {
      need_r(kw);
      if (t.values.size() == r) throw ParseError("more than NCLASSES CHAR lines", line_no);
      t.values.push_back(read_list<CycInt>(ls, r, line_no, "CHAR", parse_cyc_value));
    } else {
      throw ParseError("unknown keyword '" + kw + "' in " + source_name, line_no);
    }
  }
  if (!have_group || !have_order || !have_exp || r == 0 || !have_sizes || !have_orders || !have_inverse) {
    throw ParseError("missing header in " + source_name + " (GROUP, ORDER, EXPONENT, NCLASSES, SIZES, ORDERS, INVERSE required)", line_no);
  }
  if (t.values.size() != r) {
    throw ParseError("expected " + std::to_string(r) + " CHAR lines, found " + std::to_string(t.values.size()), line_no);
  }
  auto trivial = std::find_if(t.values.begin(), t.values.end(), [](const std::vector<CycInt>& row) {
    return std::all_of(row.begin(), row.end(), [](const CycInt& v) { return v == CycInt(1); });
  });
  if (trivial == t.values.end()) throw IntegrityError(source_name + ": no trivial character");
  std::rotate(t.values.begin(), trivial, trivial + 1);
  verify_table(t);
  return t;
}

CharacterTable ingest_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open table file " + path);
  return parse_ctx(in, path);
}

void write_ctx(std::ostream& out, const CharacterTable& t) {
  const std::size_t r = t.class_count();
  out << "GROUP " << t.label << "\nORDER " << t.order << "\nEXPONENT " << t.exponent << "\nNCLASSES " << r << "\nSIZES";
  for (const auto& s : t.sizes) out << ' ' << s;
  out << "\nORDERS";
  for (auto o : t.orders) out << ' ' << o;
  out << "\nINVERSE";
  for (auto i : t.inverse) out << ' ' << i + 1;
  out << '\n';
  for (const auto& row : t.values) {
    out << "CHAR";
    for (const auto& v : row) out << ' ' << v.to_string();
    out << '\n';
  }
}

std::vector<std::size_t> conj_permutation(const CharacterTable& t) {
  const std::size_t r = t.class_count();
  std::vector<std::size_t> pi(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r && pi[i] == r; ++j) {
      if (t.degree(i) != t.degree(j)) continue;
      bool same = true;
      for (std::size_t k = 1; k < r && same; ++k) same = t.values[j][k] == t.values[i][t.inverse[k]];
      if (same) pi[i] = j;
    }
    if (pi[i] == r) throw IntegrityError("complex conjugate of character " + one_based(i) + " is not a row of the table");
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (pi[pi[i]] != i) throw IntegrityError("conjugation permutation is not an involution");
  }
  return pi;
}

// ---------------------------------------------------------------------------

Fusion parse_fusion(std::istream& in) {
  Fusion f;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    if (!header) {
      if (!(ls >> tok)) continue;
      if (tok != "FUSION") throw ParseError("expected FUSION header", line_no);
      if (!(ls >> f.subgroup_label >> f.group_label)) throw ParseError("FUSION needs two labels", line_no);
      header = true;
    }
    while (ls >> tok) {
      std::uint64_t v = 0;
      try {
        v = std::stoull(tok);
      } catch (const std::exception&) {
        throw ParseError("bad class index '" + tok + "'", line_no);
      }
      if (v == 0) throw ParseError("class indices are 1-based", line_no);
      f.map.push_back(v - 1);
    }
  }
  if (!header) throw ParseError("missing FUSION header", line_no);
  return f;
}

Fusion read_fusion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open fusion file " + path);
  return parse_fusion(in);
}

void write_fusion(std::ostream& out, const Fusion& f) {
  out << "FUSION " << f.subgroup_label << ' ' << f.group_label << '\n';
  for (std::size_t i = 0; i < f.map.size(); ++i) out << (i ? " " : "") << f.map[i] + 1;
  out << '\n';
}

void check_fusion(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion) {
  if (fusion.map.size() != tn.class_count()) throw InvalidArgument("fusion length differs from the subgroup class count");
  if (!tg.order.divisible_by(tn.order)) throw InvalidArgument("subgroup order does not divide the group order");
  std::vector<Integer> covered(tg.class_count(), Integer(0));
  for (std::size_t k = 0; k < fusion.map.size(); ++k) {
    std::size_t c = fusion.map[k];
    if (c >= tg.class_count()) throw InvalidArgument("fusion maps to a nonexistent class");
    if (tg.orders[c] != tn.orders[k]) {
      throw InvalidArgument("fusion maps class " + one_based(k) + " to a class of different element order");
    }
    covered[c] += tn.sizes[k];
    if (covered[c] > tg.sizes[c]) throw InvalidArgument("fusion overfills class " + one_based(c));
  }
  if (fusion.map[0] != 0) throw InvalidArgument("fusion does not map the identity class to the identity class");
}

std::vector<Integer> restrict_and_decompose(const CharacterTable& tg, const CharacterTable& tn, const Fusion& fusion,
                                            std::size_t chi) {
  check_fusion(tg, tn, fusion);
  if (chi >= tg.class_count()) throw InvalidArgument("character index out of range");
  std::vector<Integer> mult;
  Integer degree_sum(0);
  for (std::size_t psi = 0; psi < tn.class_count(); ++psi) {
    CycInt s(0);
    for (std::size_t k = 0; k < tn.class_count(); ++k) {
      s += CycInt(tn.sizes[k]) * tg.values[chi][fusion.map[k]] * tn.values[psi][k].conjugate();
    }
    if (!s.is_rational() || !s.rational_value().divisible_by(tn.order)) {
      throw InvalidArgument("inconsistent fusion: non-integral multiplicity");
    }
    Integer m = s.rational_value().divexact(tn.order);
    if (m.sign() < 0) throw InvalidArgument("inconsistent fusion: negative multiplicity");
    degree_sum += m * tn.degree(psi);
    mult.push_back(m);
  }
  if (degree_sum != tg.degree(chi)) throw InvalidArgument("inconsistent fusion: degree sum mismatch");
  return mult;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<std::size_t>> table_equivalence(const CharacterTable& a, const CharacterTable& b) {
  const std::size_t r = a.class_count();
  if (r != b.class_count() || a.order != b.order) return std::nullopt;
  const std::uint64_t big_n = lcm_u64(a.exponent, b.exponent);
  auto keys = [&](const CharacterTable& t) {
    std::vector<std::vector<std::string>> k(r, std::vector<std::string>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = 0; c < r; ++c) k[i][c] = t.values[i][c].lifted(big_n).to_string();
    return k;
  };
  const auto ka = keys(a), kb = keys(b);
  auto column_sig = [&](const CharacterTable& t, const std::vector<std::vector<std::string>>& k, std::size_t c) {
    std::vector<std::string> col;
    for (std::size_t i = 0; i < r; ++i) col.push_back(k[i][c]);
    std::sort(col.begin(), col.end());
    col.push_back(t.sizes[c].to_string() + "/" + std::to_string(t.orders[c]));
    return col;
  };
  std::vector<std::vector<std::string>> sa(r), sb(r);
  for (std::size_t c = 0; c < r; ++c) {
    sa[c] = column_sig(a, ka, c);
    sb[c] = column_sig(b, kb, c);
  }
  std::vector<std::size_t> sigma(r, r);
  std::vector<bool> used(r, false);
  auto rows_match = [&](std::size_t upto) {
    std::vector<std::vector<std::string>> ra(r), rb(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = 0; c <= upto; ++c) {
        ra[i].push_back(ka[i][c]);
        rb[i].push_back(kb[i][sigma[c]]);
      }
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    return ra == rb;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t c) {
    if (c == r) return true;
    for (std::size_t d = 0; d < r; ++d) {
      if (used[d] || sa[c] != sb[d]) continue;
      sigma[c] = d;
      used[d] = true;
      if (rows_match(c) && search(c + 1)) return true;
      used[d] = false;
    }
    sigma[c] = r;
    return false;
  };
  if (!search(0)) return std::nullopt;
  return sigma;
}

}  // namespace blockforge
