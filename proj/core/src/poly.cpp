#include "macpoly/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <vector>

#include "macpoly/errors.hpp"

namespace macpoly {

Poly::Poly(long c) {
  if (c != 0) terms_.emplace(Exp{0, 0}, BigInt(c));
}

Poly::Poly(const BigInt& c) {
  if (sgn(c) != 0) terms_.emplace(Exp{0, 0}, c);
}

Poly Poly::monomial(const BigInt& c, int ex, int ey) {
  Poly p;
  if (sgn(c) != 0) p.terms_.emplace(Exp{ex, ey}, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp{0, 0});
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == Exp{0, 0} && terms_.begin()->second == 1;
}

BigInt Poly::coeff(int ex, int ey) const {
  auto it = terms_.find({ex, ey});
  return it == terms_.end() ? BigInt(0) : it->second;
}

int Poly::min_x() const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e.first < m) m = e.first;
    first = false;
  }
  return m;
}

int Poly::max_x() const { return terms_.empty() ? 0 : terms_.rbegin()->first.first; }

int Poly::min_y() const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e.second < m) m = e.second;
    first = false;
  }
  return m;
}

int Poly::max_y() const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e.second > m) m = e.second;
    first = false;
  }
  return m;
}

bool Poly::has_negative_exponents() const {
  for (const auto& [e, c] : terms_)
    if (e.first < 0 || e.second < 0) return true;
  return false;
}

const BigInt& Poly::leading_coeff() const {
  if (terms_.empty()) fail(ErrorKind::Internal, "leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

Poly::Exp Poly::leading_exp() const {
  if (terms_.empty()) fail(ErrorKind::Internal, "leading exponent of zero polynomial");
  return terms_.rbegin()->first;
}

void Poly::add_term(int ex, int ey, const BigInt& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Exp{ex, ey}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  BigInt prod;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      prod = ca * cb;
      r.add_term(ea.first + eb.first, ea.second + eb.second, prod);
    }
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::shifted(int ex, int ey) const {
  if (ex == 0 && ey == 0) return *this;
  Poly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), Exp{e.first + ex, e.second + ey}, c);
  return r;
}

Poly Poly::scaled(const BigInt& k) const {
  if (sgn(k) == 0) return {};
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c *= k;
  return r;
}

Poly Poly::divexact(const BigInt& k) const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t()))
      fail(ErrorKind::Internal, "Poly::divexact: coefficient not divisible");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
  }
  return r;
}

BigInt Poly::content() const {
  BigInt g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::substitute(int a, int b, int c, int d) const {
  Poly r;
  for (const auto& [e, k] : terms_) r.add_term(a * e.first + c * e.second, b * e.first + d * e.second, k);
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) fail(ErrorKind::Arithmetic, "division by zero polynomial");
  if (is_zero()) return Poly{};
  const int ax = min_x(), ay = min_y(), dx = d.min_x(), dy = d.min_y();
  Poly r = shifted(-ax, -ay);
  const Poly dd = d.shifted(-dx, -dy);
  const auto [lx, ly] = dd.leading_exp();
  const BigInt& lc = dd.leading_coeff();
  Poly q;
  BigInt qc;
  while (!r.is_zero()) {
    const auto [rx, ry] = r.leading_exp();
    if (rx < lx || ry < ly) return std::nullopt;
    const BigInt& rc = r.leading_coeff();
    if (!mpz_divisible_p(rc.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_divexact(qc.get_mpz_t(), rc.get_mpz_t(), lc.get_mpz_t());
    const int qx = rx - lx, qy = ry - ly;
    q.add_term(qx, qy, qc);
    for (const auto& [e, c] : dd.terms_) r.add_term(e.first + qx, e.second + qy, -(qc * c));
  }
  return q.shifted(ax - dx, ay - dy);
}

BigInt Poly::taylor_at_one(int m) const {
  // sum_e c_e * binom(e, m) with the generalized binomial coefficient.
  BigInt total = 0, num, fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  for (const auto& [e, c] : terms_) {
    if (e.second != 0) fail(ErrorKind::Internal, "taylor_at_one on a bivariate polynomial");
    num = 1;
    for (int i = 0; i < m; ++i) num *= (e.first - i);
    total += c * num;
  }
  mpz_divexact(total.get_mpz_t(), total.get_mpz_t(), fact.get_mpz_t());
  return total;
}

BigInt Poly::value_at_one() const {
  BigInt s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

// ---------------------------------------------------------------------------
// GCD. Dense univariate and recursive bivariate primitive PRS over Z.

namespace {

using UPoly = std::vector<BigInt>;
using BPoly = std::vector<UPoly>;

void trim(UPoly& u) {
  while (!u.empty() && sgn(u.back()) == 0) u.pop_back();
}

int deg(const UPoly& u) { return static_cast<int>(u.size()) - 1; }

BigInt ucontent(const UPoly& u) {
  BigInt g = 0;
  for (const auto& c : u) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void udivexact_inplace(UPoly& u, const BigInt& c) {
  if (c == 1) return;
  for (auto& x : u) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
}

UPoly upp(UPoly u) {
  if (u.empty()) return u;
  BigInt c = ucontent(u);
  if (sgn(u.back()) < 0) c = -c;
  udivexact_inplace(u, c);
  return u;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(r);
  return r;
}

void usub_inplace(UPoly& a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
}

UPoly uprem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const BigInt& lb = b.back();
  BigInt la;
  while (!a.empty() && deg(a) >= db) {
    la = a.back();
    const int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) mpz_submul(a[i + shift].get_mpz_t(), la.get_mpz_t(), b[i].get_mpz_t());
    trim(a);
  }
  return a;
}

std::optional<UPoly> udiv_exact(UPoly a, const UPoly& b) {
  if (a.empty()) return UPoly{};
  if (deg(a) < deg(b)) return std::nullopt;
  const int db = deg(b);
  UPoly q(deg(a) - db + 1, BigInt(0));
  while (!a.empty()) {
    if (deg(a) < db) return std::nullopt;
    const int shift = deg(a) - db;
    if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    BigInt qc;
    mpz_divexact(qc.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    for (int i = 0; i <= db; ++i) mpz_submul(a[i + shift].get_mpz_t(), qc.get_mpz_t(), b[i].get_mpz_t());
    q[shift] = qc;
    trim(a);
  }
  trim(q);
  return q;
}

UPoly ugcd(UPoly a, UPoly b) {
  if (a.empty()) return upp(b);
  if (b.empty()) return upp(a);
  BigInt ca = ucontent(a), cb = ucontent(b), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = upp(std::move(a));
  b = upp(std::move(b));
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    if (deg(b) == 0) {
      a = UPoly{BigInt(1)};
      break;
    }
    UPoly r = uprem(std::move(a), b);
    a = std::move(b);
    b = upp(std::move(r));
  }
  a = upp(std::move(a));
  for (auto& x : a) x *= c;
  return a;
}

void btrim(BPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

int bdeg(const BPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly bcontent(const BPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    if (c.empty()) continue;
    if (g.empty()) {
      g = c;
      if (sgn(g.back()) < 0)
        for (auto& x : g) x = -x;
    } else {
      g = ugcd(g, c);
    }
    if (g.size() == 1 && g[0] == 1) break;
  }
  return g;
}

BPoly bpp(BPoly p, const UPoly& cont) {
  if (cont.size() == 1 && cont[0] == 1) return p;
  for (auto& c : p) {
    if (c.empty()) continue;
    auto q = udiv_exact(c, cont);
    if (!q) fail(ErrorKind::Internal, "bivariate gcd: content does not divide");
    c = std::move(*q);
  }
  return p;
}

BPoly bprem(BPoly a, const BPoly& b) {
  const int db = bdeg(b);
  const UPoly lb = b.back();
  while (!a.empty() && bdeg(a) >= db) {
    const UPoly la = a.back();
    const int shift = bdeg(a) - db;
    for (auto& c : a) c = umul(c, lb);
    for (int i = 0; i <= db; ++i) usub_inplace(a[i + shift], umul(la, b[i]));
    btrim(a);
  }
  return a;
}

BPoly bgcd(BPoly a, BPoly b) {
  UPoly ca = bcontent(a), cb = bcontent(b);
  UPoly c = ugcd(ca, cb);
  a = bpp(std::move(a), ca);
  b = bpp(std::move(b), cb);
  if (bdeg(a) < bdeg(b)) std::swap(a, b);
  while (!b.empty()) {
    if (bdeg(b) == 0) {
      a = BPoly{UPoly{BigInt(1)}};
      break;
    }
    BPoly r = bprem(std::move(a), b);
    a = std::move(b);
    if (r.empty()) {
      b.clear();
    } else {
      UPoly cr = bcontent(r);
      b = bpp(std::move(r), cr);
    }
  }
  a = bpp(a, bcontent(a));
  for (auto& coef : a) coef = umul(coef, c);
  return a;
}

Poly normalize_sign(Poly p) {
  if (!p.is_zero() && sgn(p.leading_coeff()) < 0) return -p;
  return p;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.has_negative_exponents() || b.has_negative_exponents())
    fail(ErrorKind::Internal, "gcd called with Laurent terms");
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);

  const int mx = std::min(a.min_x(), b.min_x());
  const int my = std::min(a.min_y(), b.min_y());
  const Poly A = a.shifted(-a.min_x(), -a.min_y());
  const Poly B = b.shifted(-b.min_x(), -b.min_y());

  if (A.is_constant() || B.is_constant() || A.is_one() || B.is_one()) {
    BigInt ca = A.content(), cb = B.content(), g;
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return Poly::monomial(g, mx, my);
  }

  int gx = 0, gy = 0;
  for (const Poly* p : {&A, &B})
    for (const auto& [e, c] : p->terms()) {
      gx = std::gcd(gx, e.first);
      gy = std::gcd(gy, e.second);
    }
  const int sx = gx == 0 ? 1 : gx, sy = gy == 0 ? 1 : gy;

  const int degx = std::max(A.max_x(), B.max_x()) / sx;
  const int degy = std::max(A.max_y(), B.max_y()) / sy;
  // Main variable is the one with smaller degree; the other becomes the coefficient ring.
  const bool main_is_x = degx <= degy;

  auto to_dense = [&](const Poly& p) {
    BPoly d;
    for (const auto& [e, c] : p.terms()) {
      const int ex = e.first / sx, ey = e.second / sy;
      const int outer = main_is_x ? ex : ey, inner = main_is_x ? ey : ex;
      if (static_cast<int>(d.size()) <= outer) d.resize(outer + 1);
      auto& u = d[outer];
      if (static_cast<int>(u.size()) <= inner) u.resize(inner + 1, BigInt(0));
      u[inner] = c;
    }
    return d;
  };

  BPoly G;
  if ((main_is_x ? degy : degx) == 0) {
    // Univariate: the inner ring is Z; flatten the outer variable into a UPoly.
    auto flatten = [](const BPoly& d) {
      UPoly u(d.size(), BigInt(0));
      for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].empty()) u[i] = d[i][0];
      trim(u);
      return u;
    };
    UPoly g = ugcd(flatten(to_dense(A)), flatten(to_dense(B)));
    for (auto& c : g) G.push_back(sgn(c) == 0 ? UPoly{} : UPoly{c});
  } else {
    G = bgcd(to_dense(A), to_dense(B));
  }

  Poly r;
  for (std::size_t outer = 0; outer < G.size(); ++outer)
    for (std::size_t inner = 0; inner < G[outer].size(); ++inner) {
      const int ex = static_cast<int>(main_is_x ? outer : inner) * sx;
      const int ey = static_cast<int>(main_is_x ? inner : outer) * sy;
      r.add_term(ex + mx, ey + my, G[outer][inner]);
    }
  return normalize_sign(r);
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

std::string exponent_text(int e, int den) {
  Rational r(e, den);
  r.canonicalize();
  if (r.get_den() == 1) {
    if (r == 1) return "";
    return "^" + r.get_num().get_str();
  }
  return "^(" + r.get_str() + ")";
}

}  // namespace

std::string to_string(const Poly& p, const VarNames& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    if (e.first != 0) mono += names.x + exponent_text(e.first, names.x_den);
    if (e.second != 0) {
      if (!mono.empty()) mono += "*";
      mono += names.y + exponent_text(e.second, 1);
    }
    const bool neg = sgn(c) < 0;
    BigInt mag = abs(c);
    std::string body;
    if (mono.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = mono;
    else
      body = mag.get_str() + "*" + mono;
    if (first)
      out += (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

namespace {

Rational parse_exponent(std::string_view s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  return parse_rational(s);
}

}  // namespace

Poly parse_poly(std::string_view text, const VarNames& names) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorKind::InvalidInput, "empty polynomial text");

  std::vector<std::string> terms;
  {
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char ch = s[i];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if ((ch == '+' || ch == '-') && depth == 0 && i > start && s[i - 1] != '^') {
        terms.push_back(s.substr(start, i - start));
        start = i;
      }
    }
    terms.push_back(s.substr(start));
  }

  Poly out;
  for (std::string t : terms) {
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    if (t.empty()) fail(ErrorKind::InvalidInput, "dangling sign in polynomial text");
    BigInt coef = 1;
    int ex = 0, ey = 0;
    std::size_t pos = 0;
    while (pos <= t.size()) {
      std::size_t star = pos;
      int depth = 0;
      while (star < t.size() && !(t[star] == '*' && depth == 0)) {
        if (t[star] == '(') ++depth;
        if (t[star] == ')') --depth;
        ++star;
      }
      const std::string f = t.substr(pos, star - pos);
      if (f.empty()) fail(ErrorKind::InvalidInput, "empty factor in polynomial text");
      if (std::isdigit(static_cast<unsigned char>(f[0]))) {
        BigInt v;
        if (v.set_str(f, 10) != 0) fail(ErrorKind::InvalidInput, "bad integer '" + f + "'");
        coef *= v;
      } else {
        auto match = [&](const std::string& name) -> std::optional<Rational> {
          if (name.empty() || f.compare(0, name.size(), name) != 0) return std::nullopt;
          const std::string rest = f.substr(name.size());
          if (rest.empty()) return Rational(1);
          if (rest[0] != '^') return std::nullopt;
          return parse_exponent(std::string_view(rest).substr(1));
        };
        if (auto e = match(names.x)) {
          Rational scaled = *e * names.x_den;
          if (scaled.get_den() != 1) fail(ErrorKind::InvalidInput, "exponent finer than granularity in '" + f + "'");
          ex += static_cast<int>(scaled.get_num().get_si());
        } else if (auto e2 = match(names.y)) {
          if (e2->get_den() != 1) fail(ErrorKind::InvalidInput, "fractional exponent in '" + f + "'");
          ey += static_cast<int>(e2->get_num().get_si());
        } else {
          fail(ErrorKind::InvalidInput, "unknown factor '" + f + "'");
        }
      }
      pos = star + 1;
      if (star >= t.size()) break;
    }
    out.add_term(ex, ey, neg ? BigInt(-coef) : coef);
  }
  return out;
}

}  // namespace macpoly
