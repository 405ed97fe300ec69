#pragma once

#include <map>

#include "macpoly/group_algebra.hpp"
#include "macpoly/jacobi.hpp"
#include "macpoly/report.hpp"

namespace macpoly {

// Truncated element of the level-K completion: sum_d p^d L_d e^{K Lambda_0 + offset delta},
// p = e^{-delta}. Every layer with d <= order is exact; higher layers are unknown.
struct AffineSeries {
  int n = 0;
  int level = 0;
  int order = 0;
  Rational offset = 0;
  std::map<int, LatticePoly> layers;

  AffineSeries() = default;
  AffineSeries(int n_, int level_, int order_, Rational offset_ = 0)
      : n(n_), level(level_), order(order_), offset(std::move(offset_)) {}

  void add(int d, const Weight& w, const RatFunc& c);  // drops d > order
  void add_layer(int d, const LatticePoly& f);
  RatFunc coeff(int d, const Weight& w) const;
  LatticePoly layer(int d) const;
  int valuation() const;  // smallest d with a nonzero layer, order + 1 if none
  std::size_t term_count() const;

  AffineSeries truncated(int new_order) const;
  AffineSeries scaled(const RatFunc& c) const;
  AffineSeries times_p_power(int m) const;  // p^m f; the order moves with it
  AffineSeries& operator+=(const AffineSeries& o);
  AffineSeries& operator-=(const AffineSeries& o);
  friend AffineSeries operator+(AffineSeries a, const AffineSeries& b) { return a += b; }
  friend AffineSeries operator-(AffineSeries a, const AffineSeries& b) { return a -= b; }
  friend AffineSeries operator*(const AffineSeries& a, const AffineSeries& b);
  bool is_zero() const { return layers.empty(); }
};

// Same level and offset, and identical layers for every d <= through.
bool equal_through(const AffineSeries& a, const AffineSeries& b, int through);

// m_{lam + K Lambda_0} through p-order N.
AffineSeries affine_orbitsum(const RootData& rd, const Weight& lam, int K, int N, const Rational& offset = 0);
// e^{rho hat} prod_{alpha hat > 0} (1 - e^{-alpha hat}) through p-order N (level h^v).
AffineSeries affine_denominator(const RootData& rd, int N);
// e^{-(rho, rho)/(2 h^v) delta} times the denominator.
AffineSeries normalized_denominator(const RootData& rd, int N);
// Delta hat on a series: ((lam, lam) + 2 K a) on e^{lam + K Lambda_0 + a delta}.
AffineSeries affine_laplacian(const AffineSeries& f);

// Coefficient equality on every reflection pair that stays under the truncation.
bool is_affine_invariant(const RootData& rd, const AffineSeries& f);

AffineSeries mhat_apply(const RootData& rd, const AffineSeries& f, const JacobiK& k);

RatFunc affine_eigenvalue(const RootData& rd, const Weight& lam, int K, const JacobiK& k, const Rational& offset = 0);

struct AffineJacobiElement {
  Weight lambda;
  int level = 0;
  JacobiK k;
  int order = 0;
  Rational offset = 0;
  // (nu, d) -> coefficient of p^d m_{nu + K Lambda_0 + offset delta}
  std::map<std::pair<Weight, int>, RatFunc> coeffs;
};

AffineJacobiElement affine_jacobi(const RootData& rd, const Weight& lam, int K, const JacobiK& k, int N,
                                  const Rational& offset = 0);
AffineSeries expand(const RootData& rd, const AffineJacobiElement& j);

// Alternating affine Weyl sum divided layer by layer by the denominator.
AffineSeries weyl_kac_character(const RootData& rd, const Weight& lam, int K, int N);

// J at k = 1 against the Weyl-Kac character, layer by layer through p^N.
VerificationReport verify_affine_k1(const RootData& rd, const Weight& lam, int K, int N);
// M J - (lam, lam + 2k rho) J = 0 through p^N.
VerificationReport verify_affine_eigen(const RootData& rd, const Weight& lam, int K, const JacobiK& k, int N);

}  // namespace macpoly
