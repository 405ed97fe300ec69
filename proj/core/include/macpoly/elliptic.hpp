#pragma once

#include <complex>
#include <vector>

#include "macpoly/affine.hpp"
#include "macpoly/report.hpp"

namespace macpoly {

using cplx = std::complex<double>;

// Immutable evaluation context: tau in the upper half plane, p = e^{2 pi i tau}.
class EllipticContext {
 public:
  explicit EllipticContext(cplx tau, double series_tolerance = 1e-16, int max_terms = 4000,
                           double pole_guard = 1e-9);

  cplx tau() const { return tau_; }
  cplx p() const { return p_; }
  double series_tolerance() const { return tol_; }
  int max_terms() const { return max_terms_; }
  double pole_guard() const { return guard_; }

  // Distance from x to the nearest point of Z + tau Z.
  double lattice_distance(cplx x) const;
  // Throws PoleProximity when x is within the guard of the lattice.
  void require_off_lattice(cplx x, const char* what) const;

 private:
  cplx tau_;
  cplx p_;
  double tol_;
  int max_terms_;
  double guard_;
};

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

// theta_1 by its product expansion.
cplx theta1(cplx x, const EllipticContext& ctx);
// d^order theta_1 / dx^order, order 0..3, from the Fourier series (independent of the product).
cplx theta1_derivative(cplx x, int order, const EllipticContext& ctx);
cplx eta(const EllipticContext& ctx);

// -(1/2 pi i) theta_1'/theta_1, via the log-derivative of the product.
cplx sigma(cplx x, const EllipticContext& ctx);
// sum_n p^n w / (1 - p^n w)^2 over all integers n, w = e^{2 pi i x}.
cplx double_pole_sum(cplx x, const EllipticContext& ctx);
cplx wp(cplx x, const EllipticContext& ctx);

// Theta-ratio form of g.
cplx g(cplx x, cplx zeta, const EllipticContext& ctx);
// Sum over m of e^{2 pi i m zeta} / (1 - p^m e^{-2 pi i x}). The m >= 1 geometric part is summed in
// closed form, so this is valid on |Im zeta| < Im tau, zeta not an integer.
cplx g_series(cplx x, cplx zeta, const EllipticContext& ctx);
// |g_series - g| <= tol * max(1, |g|).
bool g_consistent(cplx x, cplx zeta, const EllipticContext& ctx, double tol = 1e-10);

// -(1/2 pi i) d/dx g(x, zeta), closed form.
cplx phi(cplx x, cplx zeta, const EllipticContext& ctx);
cplx phi_series(cplx x, cplx zeta, const EllipticContext& ctx);
cplx phi0(cplx zeta, const EllipticContext& ctx);
cplx phi0_series(cplx zeta, const EllipticContext& ctx);

// sum_{m != 0} e^{2 pi i m zeta} / (1 - p^m); needs 0 < Im zeta < Im tau.
cplx sigma_fourier(cplx zeta, const EllipticContext& ctx);
// (1/2) V.P. sum_m (1 + p^m z) / (1 - p^m z) with symmetric windows.
cplx sigma_principal_value(cplx zeta, const EllipticContext& ctx);

// Grid of (x, zeta, tau) samples: every identity of the appendix, one report each.
struct EllipticSample {
  cplx x;
  cplx zeta;
  cplx tau;
};
std::vector<EllipticSample> default_elliptic_grid();
std::vector<NumericReport> check_elliptic_identities(const std::vector<EllipticSample>& grid, double tol = 1e-10);

// sum of a e^{2 pi i [<lam, h> + K u - a tau]} over stored layers; h in epsilon coordinates.
cplx evaluate_affine_series(const AffineSeries& s, const std::vector<cplx>& h, cplx u, cplx tau);

// Truncated delta' against e^{2 pi i h^v u} i^{|R+|} eta^{r - |R+|} prod theta_1(<alpha, h>).
NumericReport check_denominator_product(const RootData& rd, int N, const std::vector<std::vector<cplx>>& hs,
                                        const std::vector<cplx>& us, const std::vector<cplx>& taus,
                                        double tol = 1e-8);
// Theta law of the k = 1 character under h -> h + alpha^v tau, for every simple coroot.
NumericReport check_theta_law(const RootData& rd, const Weight& lam, int K, int N,
                              const std::vector<std::vector<cplx>>& hs, cplx tau, double tol = 1e-7);

}  // namespace macpoly
