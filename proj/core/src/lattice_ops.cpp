#include "macpoly/lattice_ops.hpp"

namespace macpoly {

std::int64_t qpower_exponent(const Weight& mu, const Weight& nu) {
  // 2n * 2 (mu, nu) = 4 n^2 (mu, nu) / n
  const std::int64_t s = 4 * pairing_scaled(mu, nu);
  if (s % mu.n() != 0) fail(ErrorKind::Internal, "q-power exponent is not integral");
  return s / mu.n();
}

RatFunc evaluate_at_qpower(const LatticePoly& f, const Weight& nu) {
  // Group by exponent first so the sum touches each coefficient once.
  std::map<std::int64_t, RatFunc> by_exp;
  for (const auto& [w, c] : f.terms()) by_exp[qpower_exponent(w, nu)] += c;
  RatFunc s;
  for (const auto& [e, c] : by_exp) s += c * RatFunc::x(static_cast<int>(e));
  return s;
}

RatFunc qdim(const RootData& rd, const Weight& lam) {
  rd.check_weight(lam);
  if (!rd.is_dominant(lam)) fail(ErrorKind::Domain, "qdim requires a dominant weight");
  const int step = rd.granularity();
  const std::int64_t nn = static_cast<std::int64_t>(rd.n()) * rd.n();
  RatFunc r(1);
  for (const auto& a : rd.positive_roots()) {
    const long top = static_cast<long>(pairing_scaled(a, lam + rd.rho()) / nn);
    const long bottom = static_cast<long>(pairing_scaled(a, rd.rho()) / nn);
    r *= q_integer(top, step) / q_integer(bottom, step);
  }
  return r;
}

}  // namespace macpoly
