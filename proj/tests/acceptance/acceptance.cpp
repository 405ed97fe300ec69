// One line per acceptance criterion. `acceptance` runs all; `acceptance N` runs one.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "macpoly/affine.hpp"
#include "macpoly/elliptic.hpp"
#include "macpoly/jacobi.hpp"
#include "macpoly/kz.hpp"
#include "macpoly/lattice_ops.hpp"
#include "macpoly/macdonald.hpp"

using namespace macpoly;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  long checked = 0, failed = 0, skipped = 0;
  std::string first_failure;
  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      ++failed;
      if (first_failure.empty()) first_failure = what;
    }
  }
  void record(const VerificationReport& r) {
    if (r.inconclusive) {
      ++skipped;
      return;
    }
    record(r.equal, r.identity + " " + r.inputs.dump());
  }
  Outcome outcome(std::string extra = "") const {
    std::string d = std::to_string(checked) + " checks";
    d += ", " + std::to_string(skipped) + " skipped";
    if (failed) d += ", " + std::to_string(failed) + " failed (first: " + first_failure + ")";
    if (!extra.empty()) d += "; " + extra;
    return {failed == 0, d};
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::vector<Partition> sl_representatives(int n, int max_size) {
  std::vector<Partition> out;
  for (const auto& p : partitions_up_to(n, max_size))
    if (p.back() == 0) out.push_back(p);
  return out;
}

Outcome specializations() {
  Tally t;
  for (int n = 2; n <= 4; ++n) {
    const auto rd = RootData::build_a_type(n);
    const auto delta = weyl_denominator(rd);
    for (const auto& lam : partitions_up_to(n, 5)) {
      const Weight w = Weight::from_partition(lam);
      const auto P0 = sym_to_lattice(macdonald_poly(rd, lam, MacMode::t_eq_qk(0)).coeffs, n);
      t.record(P0 == orbitsum(rd, w), "k=0 n=" + std::to_string(n));
      // Weyl's formula multiplied out: chi * delta is the alternating sum over rho + lam.
      const auto P1 = sym_to_lattice(macdonald_poly(rd, lam, MacMode::t_eq_qk(1)).coeffs, n);
      t.record(P1 * delta == alternating_sum<RatFunc>(rd, w + rd.rho()), "k=1 n=" + std::to_string(n));
    }
  }
  return t.outcome();
}

Outcome orthogonality() {
  Tally t;
  for (int n = 2; n <= 3; ++n) {
    const auto rd = RootData::build_a_type(n);
    const auto lams = sl_representatives(n, 4);
    for (int k = 1; k <= 3; ++k)
      for (std::size_t i = 0; i < lams.size(); ++i)
        for (std::size_t j = i + 1; j < lams.size(); ++j) t.record(verify_orthogonality(rd, lams[i], lams[j], k));
  }
  return t.outcome("distinct sl weights");
}

Outcome norm_identity() {
  Tally t;
  for (int n = 2; n <= 3; ++n) {
    const auto rd = RootData::build_a_type(n);
    for (int k = 2; k <= 3; ++k)
      for (const auto& lam : partitions_up_to(n, 4)) t.record(verify_norm(rd, lam, k));
  }
  return t.outcome();
}

Outcome symmetry_and_special_value() {
  Tally t;
  for (int n = 2; n <= 3; ++n) {
    const auto rd = RootData::build_a_type(n);
    const auto lams = partitions_up_to(n, 4);
    for (int k = 2; k <= 3; ++k) {
      for (const auto& lam : lams) {
        t.record(verify_special_value(rd, lam, k));
        for (const auto& mu : lams) t.record(verify_symmetry(rd, lam, mu, k));
      }
    }
  }
  return t.outcome();
}

Outcome operator_algebra() {
  Tally t;
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> coef(-4, 4), degree(0, 4);
  for (int n = 2; n <= 3; ++n) {
    const auto rd = RootData::build_a_type(n);
    for (const auto& lam : partitions_up_to(n, 4)) t.record(verify_commutativity(rd, lam, MacMode::generic_t()));
    for (int k = 1; k <= 3; ++k) {
      const auto mode = MacMode::t_eq_qk(k);
      for (int trial = 0; trial < 20; ++trial) {
        SymPoly f, g;
        const int d = degree(rng);
        for (const auto& p : partitions(d, n, d)) {
          if (int c = coef(rng)) f.emplace(p, RatFunc(c));
          if (int c = coef(rng)) g.emplace(p, RatFunc(c));
        }
        for (int r = 1; r <= n; ++r) {
          const auto lhs = inner_product_k(rd, macdonald_op_apply(rd, r, f, mode), g, k);
          const auto rhs = inner_product_k(rd, f, macdonald_op_apply(rd, r, g, mode), k);
          t.record(lhs == rhs, "self-adjoint n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
      }
    }
  }
  return t.outcome();
}

Outcome jack_bridge() {
  Tally t;
  for (int n = 2; n <= 3; ++n) {
    const auto rd = RootData::build_a_type(n);
    for (int k = 1; k <= 3; ++k)
      for (const auto& lam : partitions_up_to(n, 4)) t.record(verify_jack_limit(rd, lam, k));
  }
  const auto rd = RootData::build_a_type(2);
  const Weight two_omega = 2 * rd.fundamental_weight(1);
  const auto J = jacobi_poly(rd, two_omega, JacobiK::symbolic());
  const RatFunc k = RatFunc::x(1);
  t.record(J.coeffs.size() == 2 && J.coeffs.at(two_omega) == RatFunc(1) &&
               J.coeffs.at(Weight::zero(2)) == RatFunc(2) * k / (k + RatFunc(1)),
           "sl2 closed form");
  return t.outcome();
}

Outcome classical_denominator() {
  Tally t;
  for (int n = 2; n <= 6; ++n) {
    const auto rd = RootData::build_a_type(n);
    const auto d = weyl_denominator_t<Rational>(rd);
    t.record(laplacian(d) == d.scaled(pairing(rd.rho(), rd.rho())), "Laplacian n=" + std::to_string(n));
  }
  for (int n = 2; n <= 8; ++n) {
    const auto rd = RootData::build_a_type(n);
    Rational s = 0;
    for (const auto& a : rd.positive_roots()) s += pairing(a, a);
    t.record(s == Rational(rd.rank() * rd.dual_coxeter()), "root norms n=" + std::to_string(n));
  }
  return t.outcome();
}

Outcome affine_k1() {
  Tally t;
  const auto rd2 = RootData::build_a_type(2), rd3 = RootData::build_a_type(3);
  for (int K : {1, 2})
    for (const auto& lam : rd2.level_alcove(K)) t.record(verify_affine_k1(rd2, lam, K, 8));
  for (const auto& lam : rd3.level_alcove(1)) t.record(verify_affine_k1(rd3, lam, 1, 8));
  return t.outcome("through p^8");
}

Outcome affine_eigen() {
  Tally t;
  const auto rd2 = RootData::build_a_type(2), rd3 = RootData::build_a_type(3);
  for (int k : {2, 3}) {
    const JacobiK kk = JacobiK::fixed(k);
    for (int K : {1, 2})
      for (const auto& lam : rd2.level_alcove(K)) t.record(verify_affine_eigen(rd2, lam, K, kk, 8));
    for (const auto& lam : rd3.level_alcove(1)) t.record(verify_affine_eigen(rd3, lam, 1, kk, 8));
  }
  for (int n : {2, 3}) {
    const auto rd = RootData::build_a_type(n);
    t.record(affine_laplacian(normalized_denominator(rd, 12)).is_zero(), "harmonic denominator n=" + std::to_string(n));
  }
  return t.outcome();
}

Outcome functional_bridge() {
  Tally t;
  double worst_product = 0, worst_theta = 0;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  for (int n : {2, 3}) {
    const auto rd = RootData::build_a_type(n);
    std::vector<std::vector<cplx>> hs;
    std::vector<cplx> us, taus;
    for (int s = 0; s < 10; ++s) {
      std::vector<cplx> h(n);
      cplx mean = 0;
      for (auto& x : h) mean += x = cplx(unit(rng), 0.3 * unit(rng));
      for (auto& x : h) x -= mean / double(n);
      hs.push_back(h);
      us.push_back(cplx(unit(rng), 0.2 * unit(rng)));
      taus.push_back(cplx(unit(rng), 1.0 + 0.5 * (unit(rng) + 0.5)));
    }
    const auto r = check_denominator_product(rd, 12, hs, us, taus, 1e-8);
    worst_product = std::max(worst_product, r.max_residual);
    t.record(r.pass, r.check + " n=" + std::to_string(n));
  }
  const auto rd = RootData::build_a_type(2);
  const std::vector<std::vector<cplx>> hs = {{{0.13, 0.02}, {-0.13, -0.02}}, {{0.31, -0.1}, {-0.31, 0.1}}};
  for (int K : {1, 2})
    for (const auto& lam : rd.level_alcove(K)) {
      const auto r = check_theta_law(rd, lam, K, 8, hs, cplx(0.05, 1.0), 1e-7);
      worst_theta = std::max(worst_theta, r.max_residual);
      t.record(r.pass, r.check + " K=" + std::to_string(K));
    }
  return t.outcome("product residual " + fmt(worst_product) + ", theta residual " + fmt(worst_theta));
}

Outcome elliptic_identities() {
  Tally t;
  double worst = 0, worst_p = 0;
  const auto grid = default_elliptic_grid();
  for (const auto& s : grid) worst_p = std::max(worst_p, std::abs(EllipticContext(s.tau).p()));
  t.record(grid.size() == 27 && worst_p <= 0.5, "grid shape");
  for (const auto& r : check_elliptic_identities(grid, 1e-10)) {
    worst = std::max(worst, r.max_residual);
    t.record(r.pass, r.check);
  }
  return t.outcome("max residual " + fmt(worst) + ", max |p| " + fmt(worst_p));
}

Outcome r_matrix_structure() {
  Tally t;
  double u = 0, res = 0, qp = 0;
  for (int n : {2, 3}) {
    const auto s = default_r_samples(n);
    const auto a = check_r_unitarity(n, s, 1e-10), b = check_r_residue(n, s, 1e-2, 64, 1e-6),
               c = check_r_quasi_periodicity(n, s, 1e-8);
    u = std::max(u, a.max_residual);
    res = std::max(res, b.max_residual);
    qp = std::max(qp, c.max_residual);
    for (const auto* r : {&a, &b, &c}) t.record(r->pass, r->check + " n=" + std::to_string(n));
  }
  return t.outcome("unitarity " + fmt(u) + ", residue " + fmt(res) + ", quasi-periodicity " + fmt(qp));
}

Outcome kz_flatness() {
  Tally t;
  struct Sample {
    double K;
    cplx tau;
    std::vector<cplx> h;
  };
  const Sample samples[] = {{1.7, {0.0, 1.1}, {{0.13, 0.05}, {-0.13, -0.05}}},
                            {1.0, {0.1, 0.9}, {{0.21, -0.04}, {-0.21, 0.04}}}};
  double worst = 0, ratio_lo = 1e9, ratio_hi = 0;
  for (int points : {2, 3}) {
    std::vector<SlRep> reps = {defining_rep(2), defining_rep(2)};
    std::vector<cplx> z = {cplx(0.1, 0.05), cplx(0.37, -0.1)};
    if (points == 3) {
      reps.push_back(symmetric_power(2, 2));
      z.push_back(cplx(0.7, 0.2));
    }
    const TensorSpace V(2, reps);
    for (const auto& s : samples) {
      const EllipticContext ctx(s.tau);
      const double r = flatness_check(V, z, s.h, ctx, s.K, 1e-4).relative;
      worst = std::max(worst, r);
      t.record(r < 1e-5, "flatness points=" + std::to_string(points));
      if (points == 3) {
        // finite differences in h as well, so the commutator carries the O(step^2) error
        const double a = flatness_check(V, z, s.h, ctx, s.K, 2e-3, HDerivative::CentralDifference).relative;
        const double b = flatness_check(V, z, s.h, ctx, s.K, 1e-3, HDerivative::CentralDifference).relative;
        ratio_lo = std::min(ratio_lo, a / b);
        ratio_hi = std::max(ratio_hi, a / b);
        t.record(std::abs(a / b - 4.0) < 0.4, "step-halving ratio");
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "step-halving ratio %.3f..%.3f", ratio_lo, ratio_hi);
  return t.outcome("max relative residual " + fmt(worst) + ", " + buf);
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 = no stated limit
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "specialization k=0,1", 60, specializations},
      {2, "orthogonality", 0, orthogonality},
      {3, "norm identity", 300, norm_identity},
      {4, "symmetry and special value", 0, symmetry_and_special_value},
      {5, "operator algebra", 0, operator_algebra},
      {6, "Jack limit", 0, jack_bridge},
      {7, "classical denominator", 0, classical_denominator},
      {8, "affine k=1 vs Weyl-Kac", 600, affine_k1},
      {9, "affine eigen-residual", 0, affine_eigen},
      {10, "functional bridge", 0, functional_bridge},
      {11, "elliptic identities", 60, elliptic_identities},
      {12, "r-matrix structure", 0, r_matrix_structure},
      {13, "KZ flatness", 0, kz_flatness},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s budget";
    }
    std::printf("criterion %2d  %s  %-28s %8.2fs  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
