#pragma once

#include <map>

#include "macpoly/group_algebra.hpp"
#include "macpoly/macdonald.hpp"
#include "macpoly/report.hpp"

namespace macpoly {

// The Jacobi parameter: either a formal variable (x of RatFunc) or a rational number.
struct JacobiK {
  bool formal = true;
  Rational value = 0;

  static JacobiK symbolic() { return {true, 0}; }
  static JacobiK fixed(const Rational& v) { return {false, v}; }
  RatFunc as_ratfunc() const { return formal ? RatFunc::x(1) : RatFunc(value); }
  std::string text() const { return formal ? "formal" : to_string(value); }
};

struct JacobiElement {
  Weight lambda;
  JacobiK k;
  std::map<Weight, RatFunc> coeffs;  // dominant mu -> coefficient of m_mu
};

inline VarNames jacobi_names() { return VarNames{"k", "y", 1}; }

// Delta_h f - 2k sum_{alpha>0} (1 - e^alpha)^{-1} d_alpha f + 2k d_rho f on W-invariant f.
LatticePoly sutherland_mk_apply(const RootData& rd, const LatticePoly& f, const JacobiK& k);
// The other displayed form, Delta_h - k sum (1 + e^alpha)/(1 - e^alpha) d_alpha, by exact string division.
LatticePoly sutherland_mk_apply_symmetric_form(const RootData& rd, const LatticePoly& f, const JacobiK& k);
// delta^{-k} (L_k - k^2 (rho, rho)) delta^k f for a nonnegative integer k, all divisions exact.
LatticePoly conjugated_sutherland_apply(const RootData& rd, const LatticePoly& f, int k);

RatFunc jacobi_eigenvalue(const RootData& rd, const Weight& lam, const JacobiK& k);
JacobiElement jacobi_poly(const RootData& rd, const Weight& lam, const JacobiK& k);
LatticePoly to_lattice(const RootData& rd, const JacobiElement& j);

// q -> 1 limit of P_lambda(q, q^k), re-indexed by sl_n weights.
JacobiElement macdonald_to_jack_limit(const RootData& rd, const Partition& lam, int k);
VerificationReport verify_jack_limit(const RootData& rd, const Partition& lam, int k);

// (1/|W|) [f bar(g) delta^k bar(delta^k)]_0.
RatFunc classical_inner_product(const RootData& rd, const LatticePoly& f, const LatticePoly& g, int k);

}  // namespace macpoly
