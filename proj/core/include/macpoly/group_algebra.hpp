#pragma once

#include <map>

#include "macpoly/errors.hpp"
#include "macpoly/ratfunc.hpp"
#include "macpoly/root_data.hpp"

namespace macpoly {

// Finitely supported element sum_mu c_mu e^mu of the group algebra of P.
// Terms are ordered by Weight, which makes every traversal deterministic.
template <class C>
class GroupAlgebra {
 public:
  using Terms = std::map<Weight, C>;

  GroupAlgebra() = default;
  static GroupAlgebra monomial(const Weight& w, const C& c = C(1)) {
    GroupAlgebra g;
    g.add(w, c);
    return g;
  }
  static GroupAlgebra constant(int n, const C& c) { return monomial(Weight::zero(n), c); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coeff(const Weight& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add(const Weight& w, const C& c) {
    if (is_zero_coeff(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_coeff(it->second)) terms_.erase(it);
    }
  }

  GroupAlgebra& operator+=(const GroupAlgebra& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  GroupAlgebra& operator-=(const GroupAlgebra& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend GroupAlgebra operator+(GroupAlgebra a, const GroupAlgebra& b) { return a += b; }
  friend GroupAlgebra operator-(GroupAlgebra a, const GroupAlgebra& b) { return a -= b; }
  GroupAlgebra operator-() const {
    GroupAlgebra r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }

  friend GroupAlgebra operator*(const GroupAlgebra& a, const GroupAlgebra& b) {
    GroupAlgebra r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add(wa + wb, C(ca * cb));
    return r;
  }
  GroupAlgebra& operator*=(const GroupAlgebra& o) { return *this = *this * o; }

  GroupAlgebra scaled(const C& s) const {
    GroupAlgebra r;
    if (is_zero_coeff(s)) return r;
    for (const auto& [w, c] : terms_) r.add(w, C(c * s));
    return r;
  }

  GroupAlgebra shifted(const Weight& by) const {
    GroupAlgebra r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w + by, c);
    return r;
  }

  friend bool operator==(const GroupAlgebra& a, const GroupAlgebra& b) { return a.terms_ == b.terms_; }

  template <class F>
  auto map_coeffs(F f) const {
    using D = decltype(f(std::declval<const C&>()));
    GroupAlgebra<D> r;
    for (const auto& [w, c] : terms_) r.add(w, f(c));
    return r;
  }

 private:
  static bool is_zero_coeff(const C& c) { return macpoly::is_zero(c); }
  Terms terms_;
};

using LatticePoly = GroupAlgebra<RatFunc>;
using IntLatticePoly = GroupAlgebra<BigInt>;
using QLatticePoly = GroupAlgebra<Rational>;

}  // namespace macpoly
