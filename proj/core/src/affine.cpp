#include "macpoly/affine.hpp"

#include <algorithm>
#include <cmath>

#include "macpoly/lattice_ops.hpp"

namespace macpoly {

namespace {

std::int64_t int_pairing(const Weight& a, const Weight& b) {
  const std::int64_t nn = static_cast<std::int64_t>(a.n()) * a.n();
  const std::int64_t s = pairing_scaled(a, b);
  if (s % nn != 0) fail(ErrorKind::Internal, "expected an integral pairing");
  return s / nn;
}

int integral_degree(const Rational& r) {
  if (r.get_den() != 1) fail(ErrorKind::Internal, "non-integral p-degree");
  return static_cast<int>(r.get_num().get_si());
}

long sigma1(int m) {
  long s = 0;
  for (int d = 1; d <= m; ++d)
    if (m % d == 0) s += d;
  return s;
}

// Root lattice vectors (scaled coordinates) with every coordinate in [-B, B].
std::vector<Weight> root_box(int n, int B) {
  std::vector<Weight> out;
  std::vector<int> b(n - 1, -B);
  while (true) {
    int sum = 0;
    for (int x : b) sum += x;
    if (std::abs(sum) <= B) {
      std::vector<std::int64_t> s(n);
      for (int i = 0; i + 1 < n; ++i) s[i] = static_cast<std::int64_t>(n) * b[i];
      s[n - 1] = -static_cast<std::int64_t>(n) * sum;
      out.push_back(Weight::from_scaled(std::move(s)));
    }
    int i = 0;
    while (i < n - 1 && b[i] == B) b[i++] = -B;
    if (i == n - 1) break;
    ++b[i];
  }
  return out;
}

// Translation part of the affine Weyl orbit: finite parts w(v) + L beta with
// p-degree (|mu|^2 - |v|^2) / (2L) <= N, each paired with sign(w).
std::vector<std::tuple<Weight, int, int>> affine_orbit(const RootData& rd, const Weight& v, int L, int N, bool signs) {
  const double norm_v = std::sqrt(pairing(v, v).get_d());
  const double radius = std::sqrt(pairing(v, v).get_d() + 2.0 * L * N);
  const int B = static_cast<int>(std::floor((radius + norm_v) / L)) + 1;
  const auto box = root_box(rd.n(), B);
  std::map<Weight, std::pair<int, int>> seen;  // distinct (w, beta) can give the same point
  for (const auto& wv : rd.weyl_orbit(v)) {
    int sign = 1;
    if (signs) {
      // parity of the permutation sorting wv into v (v is regular here)
      std::vector<std::int64_t> c(rd.n());
      for (int i = 0; i < rd.n(); ++i) c[i] = wv.scaled(i);
      for (int i = 0; i < rd.n(); ++i)
        for (int j = i + 1; j < rd.n(); ++j)
          if (c[i] < c[j]) sign = -sign;
    }
    for (const auto& beta : box) {
      Weight mu = wv + static_cast<std::int64_t>(L) * beta;
      const Rational deg = (pairing(mu, mu) - pairing(v, v)) / (2 * L);
      if (deg > N) continue;
      seen.emplace(mu, std::make_pair(integral_degree(deg), sign));
    }
  }
  std::vector<std::tuple<Weight, int, int>> out;
  for (const auto& [mu, ds] : seen) out.emplace_back(mu, ds.first, ds.second);
  return out;
}

LatticePoly one_minus(int n, const Weight& w, const RatFunc& c = RatFunc(1)) {
  LatticePoly f = LatticePoly::constant(n, RatFunc(1));
  f.add(w, -c);
  return f;
}

// prod_{alpha>0}(1 - e^{-alpha}) prod_{m>=1}[(1 - p^m)^r prod_alpha (1 - p^m e^{-alpha})], level 0.
AffineSeries denominator_without_rho(const RootData& rd, int N) {
  const int n = rd.n();
  AffineSeries d(n, 0, N);
  LatticePoly base = LatticePoly::constant(n, RatFunc(1));
  for (const auto& a : rd.positive_roots()) base *= one_minus(n, -a);
  d.add_layer(0, base);
  for (int m = 1; m <= N; ++m) {
    AffineSeries imag(n, 0, N);
    imag.add(0, Weight::zero(n), RatFunc(1));
    imag.add(m, Weight::zero(n), RatFunc(-1));
    for (int i = 0; i < rd.rank(); ++i) d = d * imag;
    for (const auto& a : rd.roots()) {
      AffineSeries f(n, 0, N);
      f.add(0, Weight::zero(n), RatFunc(1));
      f.add(m, -a, RatFunc(-1));
      d = d * f;
    }
  }
  return d;
}

LatticePoly divide_by_finite_denominator(const RootData& rd, LatticePoly f) {
  for (const auto& a : rd.positive_roots()) {
    auto h = divide_one_minus_exp(f, -a);
    if (!h) fail(ErrorKind::Internal, "Weyl-Kac division left a remainder");
    f = std::move(*h);
  }
  return f;
}

// lam hat - nu hat = lam - nu + e delta in Q hat+ (type A: delta = alpha_0 + sum alpha_i).
bool affine_leq(const RootData& rd, const Weight& nu, int e, const Weight& lam) {
  const Weight diff = lam - nu;
  if (!rd.in_root_lattice(diff)) return false;
  std::int64_t cum = 0;
  for (int i = 0; i + 1 < rd.n(); ++i) {
    cum += diff.scaled(i);  // n * (simple-root coordinate i)
    if (cum < -static_cast<std::int64_t>(e) * rd.n()) return false;
  }
  return e >= 0;
}

void check_level_weight(const RootData& rd, const Weight& lam, int K) {
  if (K <= 0) fail(ErrorKind::Unsupported, "only positive levels are supported");
  rd.check_weight(lam);
  if (!rd.in_level_alcove(lam, K)) fail(ErrorKind::Domain, "weight is not in P+_K");
}

}  // namespace

void AffineSeries::add(int d, const Weight& w, const RatFunc& c) {
  if (d > order || c.is_zero()) return;
  auto& L = layers[d];
  L.add(w, c);
  if (L.is_zero()) layers.erase(d);
}

void AffineSeries::add_layer(int d, const LatticePoly& f) {
  if (d > order) return;
  for (const auto& [w, c] : f.terms()) add(d, w, c);
}

RatFunc AffineSeries::coeff(int d, const Weight& w) const {
  auto it = layers.find(d);
  return it == layers.end() ? RatFunc() : it->second.coeff(w);
}

LatticePoly AffineSeries::layer(int d) const {
  auto it = layers.find(d);
  return it == layers.end() ? LatticePoly() : it->second;
}

int AffineSeries::valuation() const { return layers.empty() ? order + 1 : layers.begin()->first; }

std::size_t AffineSeries::term_count() const {
  std::size_t s = 0;
  for (const auto& [d, L] : layers) s += L.size();
  return s;
}

AffineSeries AffineSeries::truncated(int new_order) const {
  if (new_order > order) fail(ErrorKind::Domain, "cannot extend a truncated series");
  AffineSeries r(n, level, new_order, offset);
  for (const auto& [d, L] : layers)
    if (d <= new_order) r.layers.emplace(d, L);
  return r;
}

AffineSeries AffineSeries::scaled(const RatFunc& c) const {
  AffineSeries r(n, level, order, offset);
  if (c.is_zero()) return r;
  for (const auto& [d, L] : layers) r.layers.emplace(d, L.scaled(c));
  return r;
}

AffineSeries AffineSeries::times_p_power(int m) const {
  AffineSeries r(n, level, order + m, offset);
  for (const auto& [d, L] : layers) r.layers.emplace(d + m, L);
  return r;
}

AffineSeries& AffineSeries::operator+=(const AffineSeries& o) {
  if (o.level != level || o.offset != offset) fail(ErrorKind::Domain, "adding series of different level or offset");
  order = std::min(order, o.order);
  for (auto it = layers.begin(); it != layers.end();) it = it->first > order ? layers.erase(it) : std::next(it);
  for (const auto& [d, L] : o.layers) add_layer(d, L);
  return *this;
}

AffineSeries& AffineSeries::operator-=(const AffineSeries& o) { return *this += o.scaled(RatFunc(-1)); }

AffineSeries operator*(const AffineSeries& a, const AffineSeries& b) {
  // Precision: min(order_a + val_b, order_b + val_a).
  const int order = std::min(a.order + std::min(b.valuation(), b.order + 1), b.order + std::min(a.valuation(), a.order + 1));
  AffineSeries r(a.n, a.level + b.level, order, a.offset + b.offset);
  for (const auto& [da, La] : a.layers)
    for (const auto& [db, Lb] : b.layers)
      if (da + db <= order) r.add_layer(da + db, La * Lb);
  return r;
}

bool equal_through(const AffineSeries& a, const AffineSeries& b, int through) {
  if (a.level != b.level || a.offset != b.offset) return false;
  if (through > a.order || through > b.order) fail(ErrorKind::Domain, "comparison beyond the truncation order");
  for (int d = std::min(a.valuation(), b.valuation()); d <= through; ++d)
    if (!(a.layer(d) == b.layer(d))) return false;
  return true;
}

AffineSeries affine_orbitsum(const RootData& rd, const Weight& lam, int K, int N, const Rational& offset) {
  check_level_weight(rd, lam, K);
  if (N < 0) fail(ErrorKind::InvalidInput, "truncation order must be nonnegative");
  AffineSeries s(rd.n(), K, N, offset);
  for (const auto& [mu, d, sign] : affine_orbit(rd, lam, K, N, false)) s.add(d, mu, RatFunc(1));
  return s;
}

AffineSeries affine_denominator(const RootData& rd, int N) {
  if (N < 0) fail(ErrorKind::InvalidInput, "truncation order must be nonnegative");
  AffineSeries d = denominator_without_rho(rd, N);
  AffineSeries r(rd.n(), rd.dual_coxeter(), N);
  for (const auto& [deg, L] : d.layers) r.layers.emplace(deg, L.shifted(rd.rho()));
  return r;
}

AffineSeries normalized_denominator(const RootData& rd, int N) {
  AffineSeries d = affine_denominator(rd, N);
  d.offset = -pairing(rd.rho(), rd.rho()) / (2 * rd.dual_coxeter());
  return d;
}

AffineSeries affine_laplacian(const AffineSeries& f) {
  AffineSeries r(f.n, f.level, f.order, f.offset);
  for (const auto& [d, L] : f.layers)
    for (const auto& [mu, c] : L.terms()) {
      const Rational eig = pairing(mu, mu) + 2 * f.level * (f.offset - d);
      r.add(d, mu, c * RatFunc(eig));
    }
  return r;
}

bool is_affine_invariant(const RootData& rd, const AffineSeries& f) {
  const Weight& theta = rd.highest_root();
  for (const auto& [d, L] : f.layers)
    for (const auto& [mu, c] : L.terms()) {
      for (int i = 0; i + 1 < rd.n(); ++i)
        if (!(f.coeff(d, rd.simple_reflection(mu, i)) == c)) return false;
      const std::int64_t s = f.level - int_pairing(theta, mu);
      const std::int64_t d0 = d + s;
      if (d0 <= f.order && !(f.coeff(static_cast<int>(d0), mu + s * theta) == c)) return false;
    }
  return true;
}

AffineSeries mhat_apply(const RootData& rd, const AffineSeries& f, const JacobiK& k) {
  const int K = f.level;
  const int h = rd.dual_coxeter();
  if (K < 0) fail(ErrorKind::Domain, "negative level");
  if (!k.formal && Rational(K) + k.value * h == 0) fail(ErrorKind::Domain, "critical shift K + k h^v = 0 is excluded");
  if (!is_affine_invariant(rd, f)) fail(ErrorKind::Domain, "the operator needs an affine-Weyl-invariant input");
  const RatFunc kk = k.as_ratfunc();
  const RatFunc two_k = RatFunc(2) * kk;
  const auto all_roots = rd.roots();
  AffineSeries out(f.n, K, f.order, f.offset);
  for (const auto& [d, L] : f.layers)
    for (const auto& [mu, a] : L.terms()) {
      const Rational a_delta = f.offset - d;
      // Delta hat and 2k d_{rho hat}
      out.add(d, mu, a * (RatFunc(pairing(mu, mu) + 2 * K * a_delta) + two_k * RatFunc(pairing(rd.rho(), mu) + h * a_delta)));
      // imaginary roots m delta, multiplicity r
      for (int m = 1; d + m <= f.order; ++m)
        out.add(d + m, mu, a * two_k * RatFunc(static_cast<long>(rd.rank()) * K * sigma1(m)));
      // real roots alpha + m delta: pairs collapse to 2k a c sum_{j=1}^{c} e^{mu - j alpha hat}
      for (int m = 0; d + m <= f.order; ++m) {
        const auto& roots = m == 0 ? rd.positive_roots() : all_roots;
        for (const auto& alpha : roots) {
          const std::int64_t c = int_pairing(alpha, mu) + static_cast<std::int64_t>(m) * K;
          if (c <= 0) continue;
          const RatFunc w = a * two_k * RatFunc(static_cast<long>(c));
          for (std::int64_t j = 1; j <= c; ++j) {
            const std::int64_t deg = d + j * m;
            if (deg > f.order) break;
            out.add(static_cast<int>(deg), mu - j * alpha, w);
          }
        }
      }
    }
  return out;
}

RatFunc affine_eigenvalue(const RootData& rd, const Weight& lam, int K, const JacobiK& k, const Rational& offset) {
  return RatFunc(pairing(lam, lam) + 2 * K * offset) +
         RatFunc(2) * k.as_ratfunc() * RatFunc(pairing(lam, rd.rho()) + rd.dual_coxeter() * offset);
}

AffineJacobiElement affine_jacobi(const RootData& rd, const Weight& lam, int K, const JacobiK& k, int N,
                                  const Rational& offset) {
  check_level_weight(rd, lam, K);
  if (N < 0) fail(ErrorKind::InvalidInput, "truncation order must be nonnegative");
  if (!k.formal && k.value < 0) fail(ErrorKind::InvalidInput, "k must be formal or a nonnegative rational");
  const int h = rd.dual_coxeter();
  if (!k.formal && Rational(K) + k.value * h == 0) fail(ErrorKind::Domain, "critical shift K + k h^v = 0 is excluded");

  auto alcove = rd.level_alcove(K);
  std::sort(alcove.begin(), alcove.end(), [&](const Weight& a, const Weight& b) {
    const Rational ha = pairing(a, rd.rho()), hb = pairing(b, rd.rho());
    if (ha != hb) return ha > hb;
    return a > b;
  });
  std::map<Weight, AffineSeries> images;
  for (const auto& nu : alcove) {
    if (!rd.in_root_lattice(lam - nu)) continue;
    images.emplace(nu, mhat_apply(rd, affine_orbitsum(rd, nu, K, N, offset), k));
  }
  const RatFunc E = affine_eigenvalue(rd, lam, K, k, offset);
  const RatFunc shift = RatFunc(2) * (RatFunc(K) + k.as_ratfunc() * RatFunc(h));

  AffineJacobiElement el{lam, K, k, N, offset, {}};
  for (int e = 0; e <= N; ++e)
    for (const auto& nu : alcove) {
      if (!images.count(nu) || !affine_leq(rd, nu, e, lam)) continue;
      if (e == 0 && nu == lam) {
        el.coeffs.emplace(std::make_pair(nu, 0), RatFunc(1));
        continue;
      }
      RatFunc rhs;
      for (const auto& [key, c] : el.coeffs) {
        const auto& [src, d] = key;
        if (d > e || (src == nu && d == e)) continue;
        rhs += c * images.at(src).coeff(e - d, nu);
      }
      const RatFunc gap = E - images.at(nu).coeff(0, nu) + RatFunc(e) * shift;
      bool bad = gap.is_zero();
      if (!bad && !k.formal && gap.constant_value() <= 0) bad = true;
      if (bad) {
        std::string s;
        for (int i = 0; i < rd.n(); ++i) s += (i ? "," : "") + to_string(nu.coord(i));
        fail(ErrorKind::DegenerateSpectrum,
             "affine eigenvalue gap is not positive at p-depth " + std::to_string(e) + " for nu = (" + s + ")");
      }
      if (!rhs.is_zero()) el.coeffs.emplace(std::make_pair(nu, e), rhs / gap);
    }
  return el;
}

AffineSeries expand(const RootData& rd, const AffineJacobiElement& j) {
  AffineSeries s(rd.n(), j.level, j.order, j.offset);
  for (const auto& [key, c] : j.coeffs) {
    const auto& [nu, d] = key;
    s += affine_orbitsum(rd, nu, j.level, j.order - d, j.offset).times_p_power(d).scaled(c);
  }
  s.order = j.order;
  return s;
}

AffineSeries weyl_kac_character(const RootData& rd, const Weight& lam, int K, int N) {
  check_level_weight(rd, lam, K);
  const int n = rd.n();
  const Weight v = lam + rd.rho();
  AffineSeries num(n, K, N);
  for (const auto& [mu, d, sign] : affine_orbit(rd, v, K + rd.dual_coxeter(), N, true))
    num.add(d, mu - rd.rho(), RatFunc(sign));
  const AffineSeries den = denominator_without_rho(rd, N);
  AffineSeries ch(n, K, N);
  for (int d = 0; d <= N; ++d) {
    LatticePoly r = num.layer(d);
    for (int j = 1; j <= d; ++j) {
      const LatticePoly dj = den.layer(j);
      if (dj.is_zero()) continue;
      r -= dj * ch.layer(d - j);
    }
    ch.add_layer(d, divide_by_finite_denominator(rd, r));
  }
  return ch;
}

}  // namespace macpoly

namespace macpoly {

namespace {

nlohmann::json weight_coords(const Weight& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : w.coords()) j.push_back(to_string(c));
  return j;
}

std::string layer_summary(const AffineSeries& s) {
  std::string out;
  for (int d = 0; d <= s.order; ++d) out += (d ? "," : "") + std::to_string(s.layer(d).terms().size());
  return "terms per layer [" + out + "]";
}

}  // namespace

VerificationReport verify_affine_k1(const RootData& rd, const Weight& lam, int K, int N) {
  const AffineSeries J = expand(rd, affine_jacobi(rd, lam, K, JacobiK::fixed(1), N));
  const AffineSeries ch = weyl_kac_character(rd, lam, K, N);
  VerificationReport rep;
  rep.identity = "affine-k1";
  rep.inputs = {{"n", rd.n()}, {"lambda", weight_coords(lam)}, {"K", K}, {"N", N}};
  rep.lhs = layer_summary(J);
  rep.rhs = layer_summary(ch);
  rep.equal = equal_through(J, ch, N);
  if (!rep.equal)
    for (int d = 0; d <= N; ++d)
      if (!(J.layer(d) == ch.layer(d))) {
        rep.note = "first differing layer p^" + std::to_string(d);
        break;
      }
  return rep;
}

VerificationReport verify_affine_eigen(const RootData& rd, const Weight& lam, int K, const JacobiK& k, int N) {
  const AffineSeries J = expand(rd, affine_jacobi(rd, lam, K, k, N));
  const AffineSeries res = mhat_apply(rd, J, k) - J.scaled(affine_eigenvalue(rd, lam, K, k));
  VerificationReport rep;
  rep.identity = "affine-eigen";
  rep.inputs = {{"n", rd.n()}, {"lambda", weight_coords(lam)}, {"K", K}, {"k", k.text()}, {"N", N}};
  rep.lhs = "residual " + layer_summary(res);
  rep.rhs = "0";
  rep.equal = res.is_zero() && is_affine_invariant(rd, J);
  return rep;
}

}  // namespace macpoly
