#pragma once

#include <vector>

#include <Eigen/Dense>

#include "macpoly/elliptic.hpp"

namespace macpoly {

using CMatrix = Eigen::MatrixXcd;

// Sym^m of the defining representation of sl_n; m = 1 is the defining representation.
// Basis: exponent vectors of degree-m monomials; E_ab acts as x_a d/dx_b.
struct SlRep {
  int n = 0;
  int m = 1;
  std::vector<std::vector<int>> basis;
  int dim() const { return static_cast<int>(basis.size()); }
  CMatrix E(int a, int b) const;
  // pi(diag(v)) for a diagonal matrix v
  CMatrix diag(const std::vector<cplx>& v) const;
};
SlRep symmetric_power(int n, int m);
inline SlRep defining_rep(int n) { return symmetric_power(n, 1); }

// Orthonormal basis (trace form) of the diagonal traceless matrices, as diagonals.
std::vector<std::vector<double>> cartan_basis(int n);

// (L_1 x ... x L_N) and its zero-weight subspace.
class TensorSpace {
 public:
  TensorSpace(int n, std::vector<SlRep> reps);

  int n() const { return n_; }
  int points() const { return static_cast<int>(reps_.size()); }
  const SlRep& rep(int i) const { return reps_[i]; }
  std::vector<int> rep_dims() const;
  int full_dim() const { return full_dim_; }
  // full-space indices spanning V[0]
  const std::vector<int>& zero_weight() const { return zero_; }
  // per-slot basis indices of a full-space index
  std::vector<int> digits(int full_index) const;

  // A at slot i, B at slot j, identity elsewhere
  CMatrix embed(int i, const CMatrix& A, int j, const CMatrix& B) const;
  CMatrix embed(int i, const CMatrix& A) const;
  CMatrix restrict(const CMatrix& full) const;
  // largest entry of full mapping V[0] out of V[0]
  double leakage(const CMatrix& full) const;

 private:
  int n_;
  std::vector<SlRep> reps_;
  int full_dim_ = 1;
  std::vector<int> zero_;
};

// An operator on V[0] with the data that identifies it.
struct ConnectionMatrix {
  int n_points = 0;
  std::vector<int> rep_dims;
  std::vector<std::vector<int>> zero_weight_basis;
  CMatrix matrix;
};

// r_{ij}(zeta) on the full tensor space: slot i carries the first factor.
CMatrix r_matrix_full(const TensorSpace& V, int i, int j, cplx zeta, const std::vector<cplx>& h,
                      const EllipticContext& ctx);
ConnectionMatrix r_matrix(const TensorSpace& V, int i, int j, cplx zeta, const std::vector<cplx>& h,
                          const EllipticContext& ctx);
// Omega = sum e (x) f + f (x) e + sum x_l (x) x_l at slots i, j
CMatrix casimir_full(const TensorSpace& V, int i, int j);

// A_i = R_i - 2 pi i sum_l pi_i(x_l) d_{x_l}, with d_{x_l} = (1/2 pi i) d/dc_l on h = sum c_l x_l.
struct KZConnection {
  double kappa = 0;                          // K + h^v
  std::vector<CMatrix> matrix_part;          // R_i on V[0]
  std::vector<std::vector<CMatrix>> h_part;  // [i][l] = -2 pi i pi_i(x_l) on V[0]
  double leakage = 0;                        // weight-preservation residual of the R_i
};
KZConnection kz_connection(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                           const EllipticContext& ctx, double K);

enum class HDerivative { Analytic, CentralDifference };

struct FlatnessResult {
  double relative = 0;  // max over pairs of |[D_i, D_j] f| / scale
  double absolute = 0;
  double step = 0;
};
// Commutators of D_i = (K + h^v) d_{zeta_i} - A_i on f = e^{2 pi i <nu, h>} v. zeta-derivatives are
// central differences; h-derivatives of r are analytic or central differences with the same step.
FlatnessResult flatness_check(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                              const EllipticContext& ctx, double K, double fd_step = 1e-4,
                              HDerivative mode = HDerivative::Analytic, std::vector<cplx> nu = {});

// prod_{i<j} theta_1(zeta_i - zeta_j + (pi_i(h) - pi_j(h))/N) / theta_1(zeta_i - zeta_j), N points; diagonal.
ConnectionMatrix psi_gauge(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                           const EllipticContext& ctx);

struct RMatrixSample {
  cplx zeta;
  std::vector<cplx> h;
  cplx tau;
};
std::vector<RMatrixSample> default_r_samples(int n);
NumericReport check_r_unitarity(int n, const std::vector<RMatrixSample>& s, double tol = 1e-10);
NumericReport check_r_residue(int n, const std::vector<RMatrixSample>& s, double radius = 1e-2, int nodes = 64,
                              double tol = 1e-6);
NumericReport check_r_quasi_periodicity(int n, const std::vector<RMatrixSample>& s, double tol = 1e-8);
// Transformation law of psi when one point moves by 1 or by tau.
NumericReport check_psi_law(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                            const EllipticContext& ctx, double tol = 1e-8);

}  // namespace macpoly
