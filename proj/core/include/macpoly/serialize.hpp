#pragma once

#include <nlohmann/json.hpp>

#include "macpoly/affine.hpp"
#include "macpoly/jacobi.hpp"
#include "macpoly/macdonald.hpp"

namespace macpoly {

using json = nlohmann::json;

// Weights: arrays of "num/den" strings in epsilon coordinates.
json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j);

// {"num": ..., "den": ...} in the canonical text form.
json ratfunc_to_json(const RatFunc& f, const VarNames& names);
RatFunc ratfunc_from_json(const json& j, const VarNames& names);

// [{"weight", "num", "den"}] in weight order.
json lattice_poly_to_json(const LatticePoly& f, const VarNames& names);
LatticePoly lattice_poly_from_json(const json& j, int n, const VarNames& names);

// {"n", "lambda", "mode", "k"?, "coeffs": [{"mu", "num", "den"}]}
json macdonald_to_json(const MacdonaldBasisElement& P, int n);
MacdonaldBasisElement macdonald_from_json(const json& j);

// {"n", "lambda", "k", "coeffs": [{"mu", "num", "den"}]}
json jacobi_to_json(const JacobiElement& J);
JacobiElement jacobi_from_json(const json& j);

// {"n", "K", "k", "N", "offset", "layers": [{"p", "terms": [{"weight", "num", "den"}]}]}
json affine_to_json(const AffineSeries& s, const JacobiK& k);
AffineSeries affine_from_json(const json& j);

JacobiK jacobi_k_from_text(const std::string& s);  // "formal" or a rational

}  // namespace macpoly
