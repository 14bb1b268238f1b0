#pragma once

// File formats: field {p, e, poly}, subspace {ambient_dim, rows}, egg {field, n, m,
// elements}, incidence {v, b, incidences, labels?}, flock {field, planes}.

#include <fstream>
#include <sstream>

#include "tgq/egg.hpp"
#include "tgq/flock.hpp"
#include "tgq/gq.hpp"

namespace tgq::io {

using nlohmann::json;

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Parse, "cannot write " + path);
  out << j.dump(2) << '\n';
}

namespace detail {

/// Runs a parse step, turning JSON type errors into Parse errors.
template <class F>
auto guarded(const char* what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

inline Matrix rows_from(const FiniteField& F, const json& j, std::size_t len) {
  if (!j.is_array()) fail(ErrorCode::Parse, "rows must be an array");
  Matrix m;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != len) fail(ErrorCode::Parse, "row has length " + std::to_string(r.size()) + ", expected " + std::to_string(len));
    Vec v;
    for (const auto& x : r) {
      if (!x.is_number_unsigned() || x.get<unsigned>() >= F.q()) fail(ErrorCode::Parse, "entry is not a field code");
      v.push_back(static_cast<Elem>(x.get<unsigned>()));
    }
    m.push_back(std::move(v));
  }
  return m;
}

}  // namespace detail

inline json field_to_json(const FieldPtr& f) { return {{"p", f->p()}, {"e", f->e()}, {"poly", f->poly()}}; }

inline FieldPtr field_from_json(const json& j) {
  return detail::guarded("field", [&] {
    if (!j.is_object()) fail(ErrorCode::Parse, "field must be an object");
    const unsigned p = j.at("p").get<unsigned>(), e = j.at("e").get<unsigned>();
    std::optional<std::vector<unsigned>> poly;
    if (j.contains("poly")) poly = j.at("poly").get<std::vector<unsigned>>();
    return field_create(p, e, poly);
  });
}

inline json subspace_to_json(const Subspace& s) { return {{"ambient_dim", s.ambient_dim()}, {"rows", s.rows()}}; }

inline Subspace subspace_from_json(const FieldPtr& f, const json& j) {
  return detail::guarded("subspace", [&] {
    const int d = j.at("ambient_dim").get<int>();
    if (d < 0 || d > 64) fail(ErrorCode::Parse, "ambient dimension out of range");
    return Subspace::from_rows(f, d, detail::rows_from(*f, j.at("rows"), std::size_t(d) + 1));
  });
}

inline json egg_to_json(const Egg& e) {
  json els = json::array();
  for (const auto& el : e.elements) els.push_back(el.rows());
  return {{"field", field_to_json(e.field)}, {"n", e.n}, {"m", e.m}, {"elements", els}};
}

/// Reads and validates an egg. Structural failures surface as their own error codes.
inline Egg egg_from_json(const json& j, const ValidateOptions& opt = {}) {
  const FieldPtr f = field_from_json(j.contains("field") ? j.at("field") : json());
  const auto [n, m] = detail::guarded("egg", [&] { return std::pair{j.at("n").get<int>(), j.at("m").get<int>()}; });
  if (n < 1 || m < 1 || 2 * n + m > 32) fail(ErrorCode::Parse, "egg parameters out of range");
  const json& els = detail::guarded("egg", [&]() -> const json& { return j.at("elements"); });
  if (!els.is_array()) fail(ErrorCode::Parse, "elements must be an array");
  std::vector<Subspace> elements;
  for (const auto& el : els) elements.push_back(Subspace::from_rows(f, 2 * n + m - 1, detail::rows_from(*f, el, 2 * n + m)));
  return egg_validate(f, n, m, std::move(elements), opt);
}

inline json incidence_to_json(const IncidenceStructure& S) {
  json inc = json::array();
  for (const auto& [p, l] : S.incidences()) inc.push_back({p, l});
  json j = {{"v", S.v()}, {"b", S.b()}, {"incidences", inc}};
  if (!S.labels().empty()) j["labels"] = S.labels();
  return j;
}

inline IncidenceStructure incidence_from_json(const json& j) {
  return detail::guarded("incidence", [&] {
    const auto v = j.at("v").get<std::size_t>(), b = j.at("b").get<std::size_t>();
    std::vector<std::pair<Index, Index>> inc;
    for (const auto& x : j.at("incidences")) {
      const auto pl = x.get<std::pair<Index, Index>>();
      if (pl.first < 0 || std::size_t(pl.first) >= v) fail(ErrorCode::Parse, "point index out of range");
      inc.push_back(pl);
    }
    return IncidenceStructure::from_incidences(v, b, inc);
  });
}

inline json flock_to_json(const FieldPtr& f, const std::vector<FlockPlane>& planes) {
  return {{"field", field_to_json(f)}, {"planes", planes}};
}

inline std::pair<FieldPtr, std::vector<FlockPlane>> flock_from_json(const json& j) {
  const FieldPtr f = field_from_json(j.contains("field") ? j.at("field") : json());
  const Matrix rows = detail::guarded("flock", [&] { return detail::rows_from(*f, j.at("planes"), 4); });
  std::vector<FlockPlane> planes;
  for (const auto& r : rows) planes.push_back({r[0], r[1], r[2], r[3]});
  return {f, planes};
}

}  // namespace tgq::io
