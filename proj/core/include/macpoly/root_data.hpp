#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "macpoly/rational.hpp"

namespace macpoly {

// Weight of sl_n in epsilon coordinates. Stored as integers scaled by n, so the
// true coordinate i is scaled(i) / n.
class Weight {
 public:
  Weight() = default;
  static Weight from_scaled(std::vector<std::int64_t> scaled);
  static Weight from_coords(const std::vector<Rational>& coords);
  // Projection of a gl_n exponent vector (or partition) to the trace-zero hyperplane.
  static Weight from_partition(const std::vector<int>& parts);
  static Weight zero(int n) { return from_scaled(std::vector<std::int64_t>(n, 0)); }

  int n() const { return static_cast<int>(s_.size()); }
  std::int64_t scaled(int i) const { return s_[i]; }
  const std::vector<std::int64_t>& scaled() const { return s_; }
  Rational coord(int i) const;
  std::vector<Rational> coords() const;

  // lambda - lambda_n as a partition; requires dominance.
  std::vector<int> to_partition() const;

  Weight operator-() const;
  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(std::int64_t c, Weight a);

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

 private:
  std::vector<std::int64_t> s_;
};

// n^2 (a, b): exact integer form of the pairing.
std::int64_t pairing_scaled(const Weight& a, const Weight& b);
Rational pairing(const Weight& a, const Weight& b);

struct AffineWeight {
  Weight finite;
  std::int64_t level = 0;
  Rational delta = 0;  // coefficient a of delta; the p-degree is -a
  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
};

// Pairing on the affine lattice: (l, m) = (l_fin, m_fin) + K_l a_m + K_m a_l.
Rational affine_pairing(const AffineWeight& a, const AffineWeight& b);

class RootData {
 public:
  static RootData build_a_type(int n);

  int n() const { return n_; }
  int rank() const { return n_ - 1; }
  int dual_coxeter() const { return n_; }
  std::int64_t weyl_order() const;
  int granularity() const { return 2 * n_; }  // Q = q^{1/(2n)}

  const std::vector<Weight>& positive_roots() const { return positive_; }
  const std::vector<Weight>& simple_roots() const { return simple_; }
  std::vector<Weight> roots() const;  // positive and negative
  const Weight& rho() const { return rho_; }
  const Weight& highest_root() const { return theta_; }
  Weight fundamental_weight(int i) const;  // 1 <= i <= n-1
  AffineWeight affine_rho() const;          // rho + h^v Lambda_0

  bool in_weight_lattice(const Weight& w) const;
  bool in_root_lattice(const Weight& w) const;
  bool in_positive_cone(const Weight& w) const;         // w in Q+
  bool leq(const Weight& mu, const Weight& lam) const;  // lam - mu in Q+
  bool is_dominant(const Weight& w) const;
  bool in_level_alcove(const Weight& w, std::int64_t K) const;  // P+_K
  Weight dominant_representative(const Weight& w) const;
  Weight simple_reflection(const Weight& w, int i) const;  // s_i, 0 <= i < n-1
  Weight reflect(const Weight& w, const Weight& alpha) const;

  std::vector<Weight> weyl_orbit(const Weight& lam) const;
  // All dominant mu <= lam; lam first, every mu before everything below it.
  std::vector<Weight> dominant_below(const Weight& lam) const;
  // P+_K restricted to the coset lam + Q (all of P+_K when lam is empty).
  std::vector<Weight> level_alcove(std::int64_t K) const;

  // lam^ -> lam^ + K beta - ((lam, beta) + K (beta, beta)/2) delta for beta in Q.
  AffineWeight affine_reflect_translate(const AffineWeight& w, const Weight& coroot) const;

  void check_weight(const Weight& w) const;

 private:
  int n_ = 0;
  std::vector<Weight> positive_;
  std::vector<Weight> simple_;
  Weight rho_;
  Weight theta_;
};

// All partitions of `size` with at most n parts, each at most `max_part`, in
// reverse lexicographic order.
std::vector<std::vector<int>> partitions(int size, int n, int max_part);
bool dominates(const std::vector<int>& lam, const std::vector<int>& mu);

}  // namespace macpoly
