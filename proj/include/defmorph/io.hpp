#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "defmorph/deformation.hpp"

namespace defmorph {

/// Ordered maps keep serialization byte-stable across runs.
using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw ParseError("coefficient must be an integer or a \"p/q\" string");
}

inline Json rat_to_json(const Rat& r) { return Json(r.str()); }

inline Json artin_to_json(const ArtinSeries& s, unsigned order) {
  Json arr = Json::array();
  for (unsigned k = 0; k <= order; ++k) arr.push_back(rat_to_json(s.coeff(k)));
  return arr;
}

inline ArtinSeries artin_from_json(const Json& j, unsigned order) {
  if (!j.is_array()) throw ParseError("series coefficient must be an array");
  ArtinSeries s = ArtinSeries::zero_of_order(order);
  for (unsigned k = 0; k < j.size(); ++k) {
    if (k > order) {
      if (!rat_from_json(j[k]).is_zero())
        throw ParseError("series coefficient beyond truncation order");
      continue;
    }
    s.coeff_mut(k) = rat_from_json(j[k]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Algebras: {"basis": [{"name": ..., "degree": ...}, ...],
//            "product": [[[c...] per pair]],  (c[i][j] = coords of e_i e_j)
//            "differential": [[...]] optional}
// ---------------------------------------------------------------------------

inline DGAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("basis") || !j.contains("product"))
    throw ParseError("algebra: need \"basis\" and \"product\"");
  DGAlgebra a;
  for (const auto& e : j.at("basis")) {
    if (!e.contains("name") || !e.contains("degree"))
      throw ParseError("algebra basis entry: need \"name\" and \"degree\"");
    a.basis.elements.push_back(
        {e.at("name").get<std::string>(), e.at("degree").get<int>()});
  }
  const std::size_t d = a.dim();
  const Json& prod = j.at("product");
  if (prod.size() != d) throw ParseError("algebra: product shape");
  a.product.assign(d, std::vector<Vec>(d, Vec(d)));
  for (std::size_t i = 0; i < d; ++i) {
    if (prod[i].size() != d) throw ParseError("algebra: product shape");
    for (std::size_t k = 0; k < d; ++k) {
      if (prod[i][k].size() != d) throw ParseError("algebra: product shape");
      for (std::size_t l = 0; l < d; ++l)
        a.product[i][k][l] = rat_from_json(prod[i][k][l]);
    }
  }
  if (j.contains("differential") && !j.at("differential").is_null()) {
    const Json& diff = j.at("differential");
    if (diff.size() != d) throw ParseError("algebra: differential shape");
    a.differential = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (diff[i].size() != d) throw ParseError("algebra: differential shape");
      for (std::size_t k = 0; k < d; ++k)
        a.differential.at(i, k) = rat_from_json(diff[i][k]);
    }
  }
  return a;
}

inline Json algebra_to_json(const DGAlgebra& a) {
  Json j;
  j["basis"] = Json::array();
  for (const auto& e : a.basis.elements)
    j["basis"].push_back({{"name", e.name}, {"degree", e.degree}});
  Json prod = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) {
      Json cell = Json::array();
      for (std::size_t l = 0; l < a.dim(); ++l)
        cell.push_back(rat_to_json(a.product[i][k][l]));
      row.push_back(cell);
    }
    prod.push_back(row);
  }
  j["product"] = prod;
  if (a.has_differential()) {
    Json diff = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < a.dim(); ++k)
        row.push_back(rat_to_json(a.differential.at(i, k)));
      diff.push_back(row);
    }
    j["differential"] = diff;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Morphisms: {"matrix": [[...]]}, rows indexed by target basis, columns by
// source basis (column j = image of the j-th source element).
// ---------------------------------------------------------------------------

inline AlgebraMorphism morphism_from_json(const Json& j, const DGAlgebra& src,
                                          const DGAlgebra& tgt) {
  if (!j.is_object() || !j.contains("matrix"))
    throw ParseError("morphism: need \"matrix\"");
  AlgebraMorphism m;
  m.source = src;
  m.target = tgt;
  const Json& mat = j.at("matrix");
  if (mat.size() != tgt.dim()) throw ParseError("morphism: matrix shape");
  m.matrix = Matrix(tgt.dim(), src.dim());
  for (std::size_t i = 0; i < tgt.dim(); ++i) {
    if (mat[i].size() != src.dim()) throw ParseError("morphism: matrix shape");
    for (std::size_t k = 0; k < src.dim(); ++k)
      m.matrix.at(i, k) = rat_from_json(mat[i][k]);
  }
  return m;
}

inline Json morphism_to_json(const AlgebraMorphism& m) {
  Json j;
  Json mat = Json::array();
  for (std::size_t i = 0; i < m.target.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.source.dim(); ++k)
      row.push_back(rat_to_json(m.matrix.at(i, k)));
    mat.push_back(row);
  }
  j["matrix"] = mat;
  return j;
}

// ---------------------------------------------------------------------------
// Cochains and solutions.  A flavor component is serialized as
// {"<arity>": [flat tensor of series]}; an MCSolution as
// {"order": N, "alpha": {...}, "beta": {...}, "phi": {...}}.
// ---------------------------------------------------------------------------

inline Json cochain_to_json(const Cochain<ArtinSeries>& c, unsigned order) {
  Json j = Json::object();
  for (const auto& [n, tensor] : c.comps) {
    Json arr = Json::array();
    for (const auto& x : tensor) arr.push_back(artin_to_json(x, order));
    j[std::to_string(n)] = arr;
  }
  return j;
}

inline void cochain_from_json(const Json& j, unsigned order,
                              Cochain<ArtinSeries>& out) {
  if (!j.is_object()) throw ParseError("cochain: need an object of arities");
  for (const auto& [key, arr] : j.items()) {
    unsigned n = 0;
    try {
      n = static_cast<unsigned>(std::stoul(key));
    } catch (const std::exception&) {
      throw ParseError("cochain: arity key '" + key + "'");
    }
    if (n == 0) throw ParseError("cochain: arity 0 not allowed");
    auto& tensor = out.ensure(n);
    if (arr.size() != tensor.size()) throw ParseError("cochain: tensor size");
    for (std::size_t i = 0; i < tensor.size(); ++i)
      tensor[i] = artin_from_json(arr[i], order);
  }
}

inline Json solution_to_json(const MCSolution& sol) {
  Json j;
  j["order"] = sol.order;
  j["alpha"] = cochain_to_json(sol.el.a, sol.order);
  j["beta"] = cochain_to_json(sol.el.b, sol.order);
  j["phi"] = cochain_to_json(sol.el.p, sol.order);
  return j;
}

inline MCSolution solution_from_json(const Json& j, const AlgebraMorphism& m) {
  if (!j.is_object() || !j.contains("order"))
    throw ParseError("solution: need \"order\"");
  MCSolution sol;
  sol.order = j.at("order").get<unsigned>();
  sol.el = zero_series(1, sol.order, m);
  if (j.contains("alpha")) cochain_from_json(j.at("alpha"), sol.order, sol.el.a);
  if (j.contains("beta")) cochain_from_json(j.at("beta"), sol.order, sol.el.b);
  if (j.contains("phi")) cochain_from_json(j.at("phi"), sol.order, sol.el.p);
  return sol;
}

// ---------------------------------------------------------------------------
// Files.
// ---------------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

}  // namespace defmorph
