#include "macpoly/root_data.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "macpoly/errors.hpp"

namespace macpoly {

Weight Weight::from_scaled(std::vector<std::int64_t> scaled) {
  Weight w;
  w.s_ = std::move(scaled);
  return w;
}

Weight Weight::from_coords(const std::vector<Rational>& coords) {
  const int n = static_cast<int>(coords.size());
  std::vector<std::int64_t> s(n);
  for (int i = 0; i < n; ++i) {
    Rational v = coords[i] * n;
    v.canonicalize();
    if (v.get_den() != 1) fail(ErrorKind::InvalidInput, "weight coordinate denominator does not divide n");
    s[i] = v.get_num().get_si();
  }
  return from_scaled(std::move(s));
}

Weight Weight::from_partition(const std::vector<int>& parts) {
  const int n = static_cast<int>(parts.size());
  std::int64_t total = 0;
  for (int p : parts) total += p;
  std::vector<std::int64_t> s(n);
  for (int i = 0; i < n; ++i) s[i] = static_cast<std::int64_t>(n) * parts[i] - total;
  return from_scaled(std::move(s));
}

Rational Weight::coord(int i) const {
  Rational r(static_cast<long>(s_[i]), static_cast<unsigned long>(n()));
  r.canonicalize();
  return r;
}

std::vector<Rational> Weight::coords() const {
  std::vector<Rational> c;
  for (int i = 0; i < n(); ++i) c.push_back(coord(i));
  return c;
}

std::vector<int> Weight::to_partition() const {
  std::vector<int> p(n());
  for (int i = 0; i < n(); ++i) p[i] = static_cast<int>((s_[i] - s_[n() - 1]) / n());
  return p;
}

Weight Weight::operator-() const {
  Weight w = *this;
  for (auto& x : w.s_) x = -x;
  return w;
}

Weight& Weight::operator+=(const Weight& o) {
  for (int i = 0; i < n(); ++i) s_[i] += o.s_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  for (int i = 0; i < n(); ++i) s_[i] -= o.s_[i];
  return *this;
}

Weight operator*(std::int64_t c, Weight a) {
  for (auto& x : a.s_) x *= c;
  return a;
}

std::int64_t pairing_scaled(const Weight& a, const Weight& b) {
  std::int64_t s = 0;
  for (int i = 0; i < a.n(); ++i) s += a.scaled(i) * b.scaled(i);
  return s;
}

Rational pairing(const Weight& a, const Weight& b) {
  const long n = a.n();
  Rational r(static_cast<long>(pairing_scaled(a, b)), static_cast<unsigned long>(n * n));
  r.canonicalize();
  return r;
}

Rational affine_pairing(const AffineWeight& a, const AffineWeight& b) {
  return pairing(a.finite, b.finite) + Rational(static_cast<long>(a.level)) * b.delta +
         Rational(static_cast<long>(b.level)) * a.delta;
}

RootData RootData::build_a_type(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "rank error: type A_{n-1} needs n >= 2");
  RootData rd;
  rd.n_ = n;
  auto root = [n](int i, int j) {
    std::vector<std::int64_t> s(n, 0);
    s[i] = n;
    s[j] = -n;
    return Weight::from_scaled(std::move(s));
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rd.positive_.push_back(root(i, j));
  for (int i = 0; i + 1 < n; ++i) rd.simple_.push_back(root(i, i + 1));
  std::vector<std::int64_t> rho(n);
  // rho_i = (n + 1 - 2i)/2 for 1-based i; scaled by n this is n(n-1-2i)/2 for 0-based i.
  for (int i = 0; i < n; ++i) rho[i] = static_cast<std::int64_t>(n) * (n - 1 - 2 * i);
  // Scaled coordinates must be integers: n(n-1-2i)/2 is an integer because n(n-1) is even.
  for (auto& x : rho) x /= 2;
  rd.rho_ = Weight::from_scaled(rho);
  rd.theta_ = root(0, n - 1);
  return rd;
}

std::int64_t RootData::weyl_order() const {
  std::int64_t f = 1;
  for (int i = 2; i <= n_; ++i) f *= i;
  return f;
}

std::vector<Weight> RootData::roots() const {
  std::vector<Weight> r = positive_;
  for (const auto& a : positive_) r.push_back(-a);
  return r;
}

Weight RootData::fundamental_weight(int i) const {
  if (i < 1 || i >= n_) fail(ErrorKind::InvalidInput, "fundamental weight index out of range");
  std::vector<int> parts(n_, 0);
  for (int j = 0; j < i; ++j) parts[j] = 1;
  return Weight::from_partition(parts);
}

AffineWeight RootData::affine_rho() const { return AffineWeight{rho_, dual_coxeter(), 0}; }

void RootData::check_weight(const Weight& w) const {
  if (w.n() != n_) fail(ErrorKind::InvalidInput, "weight has the wrong number of coordinates");
  if (!in_weight_lattice(w)) fail(ErrorKind::InvalidInput, "weight is not in the weight lattice P");
}

bool RootData::in_weight_lattice(const Weight& w) const {
  if (w.n() != n_) return false;
  std::int64_t sum = 0;
  for (int i = 0; i < n_; ++i) sum += w.scaled(i);
  if (sum != 0) return false;
  for (int i = 1; i < n_; ++i)
    if ((w.scaled(i) - w.scaled(0)) % n_ != 0) return false;
  return true;
}

bool RootData::in_root_lattice(const Weight& w) const {
  if (!in_weight_lattice(w)) return false;
  for (int i = 0; i < n_; ++i)
    if (w.scaled(i) % n_ != 0) return false;
  return true;
}

bool RootData::in_positive_cone(const Weight& w) const {
  if (!in_root_lattice(w)) return false;
  std::int64_t partial = 0;
  for (int i = 0; i < n_; ++i) {
    partial += w.scaled(i);
    if (partial < 0) return false;
  }
  return true;
}

bool RootData::leq(const Weight& mu, const Weight& lam) const { return in_positive_cone(lam - mu); }

bool RootData::is_dominant(const Weight& w) const {
  for (int i = 0; i + 1 < n_; ++i)
    if (w.scaled(i) < w.scaled(i + 1)) return false;
  return true;
}

bool RootData::in_level_alcove(const Weight& w, std::int64_t K) const {
  return is_dominant(w) && (w.scaled(0) - w.scaled(n_ - 1)) <= K * n_;
}

Weight RootData::dominant_representative(const Weight& w) const {
  auto s = w.scaled();
  std::sort(s.begin(), s.end(), std::greater<>());
  return Weight::from_scaled(std::move(s));
}

Weight RootData::simple_reflection(const Weight& w, int i) const {
  auto s = w.scaled();
  std::swap(s[i], s[i + 1]);
  return Weight::from_scaled(std::move(s));
}

Weight RootData::reflect(const Weight& w, const Weight& alpha) const {
  // (w, alpha^v) with (alpha, alpha) = 2 is an integer for w in P.
  const std::int64_t c = pairing_scaled(w, alpha) / (static_cast<std::int64_t>(n_) * n_);
  return w - c * alpha;
}

std::vector<Weight> RootData::weyl_orbit(const Weight& lam) const {
  check_weight(lam);
  auto s = lam.scaled();
  std::sort(s.begin(), s.end());
  std::vector<Weight> out;
  do {
    out.push_back(Weight::from_scaled(s));
  } while (std::next_permutation(s.begin(), s.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> partitions(int size, int n, int max_part) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int bound) {
    if (static_cast<int>(cur.size()) == n) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const int slots = n - static_cast<int>(cur.size());
    for (int p = std::min(remaining, bound); p >= 0; --p) {
      if (static_cast<long>(p) * slots < remaining) break;
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(size, max_part);
  return out;
}

bool dominates(const std::vector<int>& lam, const std::vector<int>& mu) {
  long a = 0, b = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    a += lam[i];
    b += mu[i];
    if (a < b) return false;
  }
  return a == b;
}

std::vector<Weight> RootData::dominant_below(const Weight& lam) const {
  check_weight(lam);
  if (!is_dominant(lam)) fail(ErrorKind::Domain, "dominant_below requires a dominant weight");
  const auto lp = lam.to_partition();
  int size = 0;
  for (int p : lp) size += p;
  std::vector<Weight> out;
  for (const auto& mu : partitions(size, n_, lp.empty() ? 0 : lp[0]))
    if (dominates(lp, mu)) out.push_back(Weight::from_partition(mu) + (lam - Weight::from_partition(lp)));
  std::sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
    const auto da = pairing_scaled(lam - a, rho_), db = pairing_scaled(lam - b, rho_);
    if (da != db) return da < db;
    return b < a;
  });
  return out;
}

std::vector<Weight> RootData::level_alcove(std::int64_t K) const {
  std::vector<Weight> out;
  for (int size = 0; size <= K * (n_ - 1); ++size)
    for (const auto& p : partitions(size, n_, static_cast<int>(K)))
      if (p.back() == 0) out.push_back(Weight::from_partition(p));
  std::sort(out.begin(), out.end());
  return out;
}

AffineWeight RootData::affine_reflect_translate(const AffineWeight& w, const Weight& coroot) const {
  if (!in_root_lattice(coroot)) fail(ErrorKind::Domain, "translation vector must lie in Q^v = Q");
  AffineWeight r = w;
  r.finite = w.finite + w.level * coroot;
  r.delta = w.delta - (pairing(w.finite, coroot) + Rational(static_cast<long>(w.level), 2) * pairing(coroot, coroot));
  r.delta.canonicalize();
  return r;
}

}  // namespace macpoly
