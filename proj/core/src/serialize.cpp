#include "macpoly/serialize.hpp"

#include "macpoly/errors.hpp"

namespace macpoly {

namespace {

template <class F>
auto guarded(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

VarNames names_for(int n, const MacMode& mode) {
  VarNames v = macdonald_names(n);
  if (!mode.generic) v.y.clear();
  return v;
}

}  // namespace

json weight_to_json(const Weight& w) {
  json j = json::array();
  for (const auto& c : w.coords()) j.push_back(to_string(c));
  return j;
}

Weight weight_from_json(const json& j) {
  return guarded([&] {
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(parse_rational(x.get<std::string>()));
    return Weight::from_coords(c);
  });
}

json ratfunc_to_json(const RatFunc& f, const VarNames& names) {
  return {{"num", to_string(f.num(), names)}, {"den", to_string(f.den(), names)}};
}

RatFunc ratfunc_from_json(const json& j, const VarNames& names) {
  return guarded([&] {
    return RatFunc(parse_poly(j.at("num").get<std::string>(), names), parse_poly(j.at("den").get<std::string>(), names));
  });
}

json lattice_poly_to_json(const LatticePoly& f, const VarNames& names) {
  json out = json::array();
  for (const auto& [w, c] : f.terms()) {
    json t = ratfunc_to_json(c, names);
    t["weight"] = weight_to_json(w);
    out.push_back(std::move(t));
  }
  return out;
}

LatticePoly lattice_poly_from_json(const json& j, int n, const VarNames& names) {
  return guarded([&] {
    LatticePoly f;
    for (const auto& t : j) {
      const Weight w = weight_from_json(t.at("weight"));
      if (w.n() != n) fail(ErrorKind::InvalidInput, "weight has the wrong rank");
      f.add(w, ratfunc_from_json(t, names));
    }
    return f;
  });
}

json macdonald_to_json(const MacdonaldBasisElement& P, int n) {
  json j = {{"n", n}, {"lambda", P.lambda}, {"mode", P.mode.generic ? "generic" : "t=q^k"}};
  if (!P.mode.generic) j["k"] = P.mode.k;
  const VarNames names = names_for(n, P.mode);
  json coeffs = json::array();
  for (const auto& [mu, c] : P.coeffs) {
    json t = ratfunc_to_json(c, names);
    t["mu"] = mu;
    coeffs.push_back(std::move(t));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

MacdonaldBasisElement macdonald_from_json(const json& j) {
  return guarded([&] {
    MacdonaldBasisElement P;
    const int n = j.at("n").get<int>();
    P.lambda = j.at("lambda").get<Partition>();
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "generic")
      P.mode = MacMode::generic_t();
    else if (mode == "t=q^k")
      P.mode = MacMode::t_eq_qk(j.at("k").get<int>());
    else
      fail(ErrorKind::InvalidInput, "unknown mode " + mode);
    const VarNames names = names_for(n, P.mode);
    for (const auto& t : j.at("coeffs")) P.coeffs.emplace(t.at("mu").get<Partition>(), ratfunc_from_json(t, names));
    return P;
  });
}

JacobiK jacobi_k_from_text(const std::string& s) {
  if (s == "formal") return JacobiK::symbolic();
  return JacobiK::fixed(parse_rational(s));
}

json jacobi_to_json(const JacobiElement& J) {
  json j = {{"n", J.lambda.n()}, {"lambda", weight_to_json(J.lambda)}, {"k", J.k.text()}};
  json coeffs = json::array();
  for (const auto& [mu, c] : J.coeffs) {
    json t = ratfunc_to_json(c, jacobi_names());
    t["mu"] = weight_to_json(mu);
    coeffs.push_back(std::move(t));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

JacobiElement jacobi_from_json(const json& j) {
  return guarded([&] {
    JacobiElement J;
    J.lambda = weight_from_json(j.at("lambda"));
    J.k = jacobi_k_from_text(j.at("k").get<std::string>());
    for (const auto& t : j.at("coeffs")) J.coeffs.emplace(weight_from_json(t.at("mu")), ratfunc_from_json(t, jacobi_names()));
    return J;
  });
}

json affine_to_json(const AffineSeries& s, const JacobiK& k) {
  json j = {{"n", s.n}, {"K", s.level}, {"k", k.text()}, {"N", s.order}, {"offset", to_string(s.offset)}};
  json layers = json::array();
  for (const auto& [d, f] : s.layers) layers.push_back({{"p", d}, {"terms", lattice_poly_to_json(f, jacobi_names())}});
  j["layers"] = std::move(layers);
  return j;
}

AffineSeries affine_from_json(const json& j) {
  return guarded([&] {
    AffineSeries s(j.at("n").get<int>(), j.at("K").get<int>(), j.at("N").get<int>(),
                   parse_rational(j.at("offset").get<std::string>()));
    for (const auto& layer : j.at("layers"))
      s.add_layer(layer.at("p").get<int>(), lattice_poly_from_json(layer.at("terms"), s.n, jacobi_names()));
    return s;
  });
}

}  // namespace macpoly
