#pragma once

#include <map>
#include <vector>

#include "macpoly/group_algebra.hpp"
#include "macpoly/report.hpp"

namespace macpoly {

// gl_n picture: weakly decreasing exponent vectors of length n.
using Partition = std::vector<int>;

// Symmetric polynomial in orbit-sum coordinates: m_mu -> coefficient.
// Coefficients live in Q(Q, t) with Q = q^{1/(2n)} in x and t in y.
using SymPoly = std::map<Partition, RatFunc>;

struct MacMode {
  bool generic = true;  // t symbolic
  int k = 0;            // t = q^k when !generic

  static MacMode generic_t() { return {true, 0}; }
  static MacMode t_eq_qk(int k) { return {false, k}; }
  friend bool operator==(const MacMode&, const MacMode&) = default;
  friend auto operator<=>(const MacMode&, const MacMode&) = default;
};

struct MacdonaldBasisElement {
  Partition lambda;
  MacMode mode;
  SymPoly coeffs;
};

void check_partition(const RootData& rd, const Partition& p);
int partition_size(const Partition& p);
// Partitions of |lam| with n parts dominated by lam; lam first, then a linear extension.
std::vector<Partition> dominated_partitions(const Partition& lam);
// All partitions with n parts and size <= max_size.
std::vector<Partition> partitions_up_to(int n, int max_size);

// Specializes a (Q, t) coefficient according to the mode: t -> q^k = Q^{2nk}.
RatFunc specialize(const RatFunc& c, int n, const MacMode& mode);

// M_r m_mu as Laurent polynomials in (Q, t); generic t.
const std::map<Partition, Poly>& macdonald_op_on_orbit_sum(int n, int r, const Partition& mu);

SymPoly macdonald_op_apply(const RootData& rd, int r, const SymPoly& f, const MacMode& mode);
RatFunc macdonald_eigenvalue(const RootData& rd, int r, const Partition& lam, const MacMode& mode);
MacdonaldBasisElement macdonald_poly(const RootData& rd, const Partition& lam, const MacMode& mode);

// Conversion to the sl_n picture (quotient by x_1...x_n).
LatticePoly sym_to_lattice(const SymPoly& f, int n);
SymPoly orbit_sum_sym(const Partition& lam);

// Delta_k = prod_{alpha in R} prod_{i<k} (1 - q^{2i} e^alpha) in the sl_n picture.
LatticePoly delta_k(const RootData& rd, int k);
LatticePoly phi0(const RootData& rd, int k);

// (1/|W|) [f bar(g) Delta_k]_0.
RatFunc inner_product_k(const RootData& rd, const LatticePoly& f, const LatticePoly& g, int k);
// Same form computed through the Gram matrix of orbit sums (gl picture).
RatFunc inner_product_k(const RootData& rd, const SymPoly& f, const SymPoly& g, int k);

// e^mu -> q^{2(mu, nu)} on a gl symmetric polynomial (nu is an sl weight).
RatFunc evaluate_sym_at_qpower(const SymPoly& f, const Weight& nu);

VerificationReport verify_norm(const RootData& rd, const Partition& lam, int k);
VerificationReport verify_symmetry(const RootData& rd, const Partition& lam, const Partition& mu, int k);
VerificationReport verify_special_value(const RootData& rd, const Partition& lam, int k);
// <P_lam, P_mu>_k = 0 for lam != mu.
VerificationReport verify_orthogonality(const RootData& rd, const Partition& lam, const Partition& mu, int k);
// [M_r, M_s] m_lam = 0 for all r < s and M_r P_lam = c_lam^r P_lam for all r.
VerificationReport verify_commutativity(const RootData& rd, const Partition& lam, const MacMode& mode);

// Text names for Macdonald coefficients: q with granularity 2n, t.
VarNames macdonald_names(int n);

// Drops the per-process memo tables. References returned earlier by macdonald_op_on_orbit_sum
// dangle afterwards, so do not call this while other threads are computing.
void clear_macdonald_caches();
// Native convention -> Macdonald's book: P(q,t) here is P_book(q^2, t^2).
RatFunc to_book_convention(const RatFunc& c);

}  // namespace macpoly
