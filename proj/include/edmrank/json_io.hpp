#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "edmrank/bounds.hpp"
#include "edmrank/edm.hpp"
#include "edmrank/nested.hpp"
#include "edmrank/nmf.hpp"
#include "edmrank/polygeom.hpp"
#include "edmrank/rational.hpp"

namespace edmrank {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("json: expected a rational as \"p/q\" or an integer");
}

inline Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& r : v) out.push_back(to_json(r));
  return out;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array of rationals");
  std::vector<Rational> out;
  for (const Json& e : j) out.push_back(rational_from_json(e));
  return out;
}

inline Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

inline QMatrix qmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("json: expected a matrix as an array of rows");
  const std::size_t cols = j[0].size();
  QMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != cols) throw std::invalid_argument("json: ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

inline Json to_json(const DMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

inline DMatrix dmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("json: expected a matrix as an array of rows");
  const std::size_t cols = j[0].size();
  DMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != cols) throw std::invalid_argument("json: ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = j[i][k];
      m(i, k) = e.is_string() ? rational_from_json(e).to_double() : e.get<double>();
    }
  }
  return m;
}

inline Json to_json(const Vec2& p) { return Json::array({p.x.str(), p.y.str()}); }

inline Vec2 vec2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("json: expected a point as [x, y]");
  return Vec2{rational_from_json(j[0]), rational_from_json(j[1])};
}

inline Json points_to_json(const std::vector<Vec2>& pts) {
  Json out = Json::array();
  for (const Vec2& p : pts) out.push_back(to_json(p));
  return out;
}

inline std::vector<Vec2> points_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array of points");
  std::vector<Vec2> out;
  for (const Json& e : j) out.push_back(vec2_from_json(e));
  return out;
}

inline Json instance_to_json(const EdmInstance& inst) {
  Json out;
  out["n"] = inst.alpha.n();
  out["alpha"] = to_json(inst.alpha.entries());
  out["D"] = to_json(inst.edm.D);
  out["d"] = to_json(inst.stoch.d);
  out["Dprime"] = to_json(inst.stoch.Dprime);
  return out;
}

// Rebuilds the instance from alpha and cross-checks any matrices present in
// the file, so edited inputs fail loudly instead of flowing downstream.
inline EdmInstance instance_from_json(const Json& j) {
  if (!j.contains("alpha")) throw std::invalid_argument("json: instance lacks \"alpha\"");
  EdmInstance inst = EdmInstance::from_alpha(AlphaVector(rationals_from_json(j["alpha"])));
  if (j.contains("n") && j["n"].get<std::size_t>() != inst.alpha.n())
    throw std::invalid_argument("json: \"n\" disagrees with the alpha length");
  if (j.contains("D") && qmatrix_from_json(j["D"]) != inst.edm.D)
    throw std::invalid_argument("json: \"D\" disagrees with alpha");
  if (j.contains("Dprime") && qmatrix_from_json(j["Dprime"]) != inst.stoch.Dprime)
    throw std::invalid_argument("json: \"Dprime\" disagrees with alpha");
  if (j.contains("d") && rationals_from_json(j["d"]) != inst.stoch.d)
    throw std::invalid_argument("json: \"d\" disagrees with alpha");
  return inst;
}

inline Json factorization_to_json(const Factorization& f) {
  Json out;
  out["mode"] = f.exact ? "exact" : "approx";
  if (f.exact) {
    out["B"] = to_json(f.B);
    out["C"] = to_json(f.C);
  } else {
    out["B"] = to_json(f.Bf);
    out["C"] = to_json(f.Cf);
  }
  if (f.residual) out["residual"] = *f.residual;
  return out;
}

inline Factorization factorization_from_json(const Json& j) {
  if (!j.contains("mode") || !j.contains("B") || !j.contains("C"))
    throw std::invalid_argument("json: factorization needs \"mode\", \"B\", \"C\"");
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "exact")
    return Factorization::exact_pair(qmatrix_from_json(j["B"]), qmatrix_from_json(j["C"]));
  if (mode == "approx")
    return Factorization::approx_pair(dmatrix_from_json(j["B"]), dmatrix_from_json(j["C"]),
                                      j.contains("residual") ? j["residual"].get<double>() : 0.0);
  throw std::invalid_argument("json: unknown factorization mode \"" + mode + "\"");
}

inline Json certificate_to_json(const NestedCertificate& cert) {
  Json out;
  out["k"] = cert.k;
  out["vertices"] = points_to_json(cert.polygon.vertices());
  Json wit;
  Json inner = Json::array();
  for (const auto& row : cert.inner_coeffs) inner.push_back(to_json(row));
  Json verts = Json::array();
  for (const auto& row : cert.vertex_coeffs) verts.push_back(to_json(row));
  wit["inner_coeffs"] = std::move(inner);
  wit["vertex_coeffs"] = std::move(verts);
  out["witnesses"] = std::move(wit);
  return out;
}

inline Json bracket_to_json(const RankBracket& b) {
  Json out;
  out["n"] = b.n;
  out["lower"] = Json{{"value", b.lower}, {"provenance", b.lower_provenance}};
  out["upper"] = Json{{"value", b.upper}, {"provenance", b.upper_provenance}};
  out["upper"]["certificate"] = certificate_to_json(b.certificate);

  // The independence-conditional floor, reported with the exact real value's
  // integer neighborhood and kept out of the unconditional fields.
  const mpz_class four_n = 4 * mpz_class(static_cast<unsigned long>(b.n));
  mpz_class lo = sqrt(four_n);
  mpz_class hi = lo;
  if (hi * hi < four_n) hi += 1;
  Json cond;
  cond["label"] = "conditional";
  cond["value"] = b.conditional_lower;
  cond["exact_real"] = "2*sqrt(" + std::to_string(b.n) + ") - 2";
  cond["floor"] = static_cast<long>(lo.get_si()) - 2;
  cond["ceil"] = static_cast<long>(hi.get_si()) - 2;
  out["conditional_lower"] = std::move(cond);

  if (b.search_terms) {
    out["search"] = Json{{"terms", *b.search_terms}, {"residual", *b.search_residual}};
  }
  return out;
}

}  // namespace edmrank
