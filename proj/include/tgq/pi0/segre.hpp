#pragma once

#include <set>

#include "tgq/pi0/conic.hpp"

namespace tgq::pi0 {

/// The conics through every point of a base element meeting two further elements.
struct SegreFamily {
  int base = 0, i = 0, j = 0;
  std::vector<Pi0Conic> conics;
  Subspace eta;                 // restricted tangent spaces of i and j, intersected
  std::vector<int> v_elements;  // elements covered by the union of the conics
  nlohmann::json certificate;
  bool pass = true;
};

namespace detail {

/// Local coordinates of v in the basis rows of a plane (empty when outside).
inline Vec plane_coords(const FiniteField& F, const Subspace& plane, const Vec& v) { return solve_combination(F, plane.rows(), v); }

/// Fits the projectivity of the frame (s_base, s_i, s_j, u_ij) of one conic plane onto
/// another and checks that it carries every conic point to the point of the same element.
inline bool conic_planes_correspond(const Egg& E, const SegreFamily& fam, const Pi0Conic& a, const Pi0Conic& b,
                                    nlohmann::json& witness) {
  const FiniteField& F = *E.field;
  auto u_of = [&](const Pi0Conic& c, int x, int y) { return single_point(meet(c.tangents[c.slot_of(x)], c.tangents[c.slot_of(y)])); };
  const std::vector<std::pair<int, int>> tangent_pairs = {{fam.i, fam.j}, {fam.base, fam.j}, {fam.base, fam.i}};
  std::vector<std::pair<Vec, Vec>> pairs;
  for (int e : {fam.base, fam.i, fam.j})
    pairs.emplace_back(plane_coords(F, a.plane(), a.point_on(e)), plane_coords(F, b.plane(), b.point_on(e)));
  for (const auto& [x, y] : tangent_pairs)
    pairs.emplace_back(plane_coords(F, a.plane(), u_of(a, x, y)), plane_coords(F, b.plane(), u_of(b, x, y)));
  for (auto& [s, t] : pairs) {
    normalize(F, s);
    normalize(F, t);
  }
  Projectivity theta;
  try {
    theta = fit_projectivity(E.field, pairs, 2);
  } catch (const Error& e) {
    witness = {{"reason", e.what()}};
    return false;
  }
  for (const auto& [s, t] : pairs)
    if (theta.apply(s) != t) {
      witness = {{"reason", "frame or tangent intersection not preserved"}};
      return false;
    }
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    const int e = a.contact[k];
    if (!b.meets(e)) {
      witness = {{"reason", "conics meet different elements"}, {"element", e}};
      return false;
    }
    Vec t = plane_coords(F, b.plane(), b.point_on(e));
    normalize(F, t);
    Vec s = plane_coords(F, a.plane(), a.points[k]);
    normalize(F, s);
    if (theta.apply(s) != t) {
      witness = {{"reason", "conic point not mapped to the point of the same element"}, {"element", e}};
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// One conic per point class of the base element, meeting elements i and j, with the
/// certificate that the planes are exactly those meeting base, i, j and eta, that the
/// planes correspond under projectivities, and that the union covers q+1 elements.
inline SegreFamily segre_family(const Egg& E, int i, int j, int base = 0) {
  if (i == j || i == base || j == base) fail(ErrorCode::Precondition, "need three distinct elements");
  SegreFamily fam;
  fam.base = base;
  fam.i = i;
  fam.j = j;
  const auto& pb = E.elements[base];
  for (const auto& s : points_of(pb)) fam.conics.push_back(conic_through(E, i, j, base, s));

  const Subspace P = span({pb, E.elements[i], E.elements[j]});
  const Subspace ti = meet(P, E.tangents[i]), tj = meet(P, E.tangents[j]);
  fam.eta = meet(ti, tj);
  auto& cert = fam.certificate;
  auto check = [&](const std::string& name, bool ok, nlohmann::json w = nullptr) {
    cert["checks"][name] = ok;
    if (!ok) {
      fam.pass = false;
      if (!w.is_null()) cert["witnesses"][name] = std::move(w);
    }
  };
  const std::size_t expected = point_count(E.q(), E.n);
  std::set<Subspace> planes;
  for (const auto& c : fam.conics) planes.insert(c.plane());
  check("plane_count", planes.size() == expected, {{"planes", planes.size()}, {"expected", expected}});
  check("eta_dim", fam.eta.rank() == E.n, {{"rank", fam.eta.rank()}});

  bool meets_all = true;
  for (const auto& c : fam.conics)
    for (const Subspace* x : {&pb, &E.elements[i], &E.elements[j], static_cast<const Subspace*>(&fam.eta)})
      if (meet(c.plane(), *x).is_empty()) meets_all = false;
  check("planes_meet_base_i_j_eta", meets_all);

  // Every plane meeting base, pi_i, pi_j and eta, by enumeration of one point per element.
  std::set<Subspace> enumerated;
  const auto pts_b = points_of(pb), pts_i = points_of(E.elements[i]), pts_j = points_of(E.elements[j]);
  for (const auto& a : pts_b)
    for (const auto& b : pts_i)
      for (const auto& c : pts_j) {
        Subspace pl = Subspace::from_rows(E.field, E.ambient_dim(), {a, b, c});
        if (pl.rank() == 3 && !meet(pl, fam.eta).is_empty()) enumerated.insert(pl);
      }
  check("planes_equal_enumeration", enumerated == planes, {{"enumerated", enumerated.size()}});

  bool proj_ok = true;
  nlohmann::json pw;
  for (std::size_t a = 0; a < fam.conics.size() && proj_ok; ++a)
    for (std::size_t b = a + 1; b < fam.conics.size() && proj_ok; ++b)
      if (!detail::conic_planes_correspond(E, fam, fam.conics[a], fam.conics[b], pw)) {
        proj_ok = false;
        pw["planes"] = {a, b};
      }
  check("projectivities", proj_ok, pw);

  std::set<int> owners;
  std::set<Vec> vset;
  for (const auto& c : fam.conics)
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      owners.insert(c.contact[k]);
      vset.insert(c.points[k]);
    }
  fam.v_elements.assign(owners.begin(), owners.end());
  std::set<Vec> union_points;
  for (int e : fam.v_elements)
    for (auto& p : points_of(E.elements[e])) union_points.insert(p);
  check("v_set_is_union_of_q_plus_1_elements", owners.size() == E.q() + 1 && vset == union_points,
        {{"elements", fam.v_elements}, {"points", vset.size()}});
  cert["counts"] = {{"conics", fam.conics.size()}, {"planes", planes.size()}, {"v_elements", fam.v_elements.size()}};
  return fam;
}

/// Pairwise meets of the tangent spaces restricted to <pi_0, pi_i, pi_j>.
struct EtaConfiguration {
  Subspace eta0, eta_i, eta_j;  // tau_i meet tau_j, tau_0 meet tau_j, tau_0 meet tau_i (restricted)
  bool q_even = false;
  bool equal = false;           // even case
  Subspace common;              // odd case: <pi_0,eta0> meet <pi_i,eta_i> meet <pi_j,eta_j>
  bool nuclei_in_eta0 = true;   // even case
  bool pass = false;
};

inline EtaConfiguration eta_configuration(const Egg& E, int i, int j) {
  if (i == 0 || j == 0 || i == j) fail(ErrorCode::Precondition, "need two distinct elements other than 0");
  EtaConfiguration r;
  const Subspace P = span({E.elements[0], E.elements[i], E.elements[j]});
  const Subspace t0 = meet(P, E.tangents[0]), ti = meet(P, E.tangents[i]), tj = meet(P, E.tangents[j]);
  r.eta0 = meet(ti, tj);
  r.eta_i = meet(t0, tj);
  r.eta_j = meet(t0, ti);
  r.q_even = E.field->p() == 2;
  if (r.q_even) {
    r.equal = r.eta0 == r.eta_i && r.eta0 == r.eta_j;
    for (const auto& c : segre_family(E, i, j).conics)
      if (!r.eta0.contains(conic_nucleus(c.conic))) r.nuclei_in_eta0 = false;
    r.pass = r.equal && r.nuclei_in_eta0 && r.eta0.rank() == E.n;
  } else {
    r.common = meet(meet(span(E.elements[0], r.eta0), span(E.elements[i], r.eta_i)), span(E.elements[j], r.eta_j));
    r.pass = r.common.rank() == E.n;
  }
  return r;
}

/// q+1 elements on a conic family through three given elements.
struct BigPi0Conic {
  std::vector<int> elements;
  Subspace span;
  std::vector<Subspace> tangent_spaces;  // span meet tau, aligned with elements
};

/// The elements met by the conics through one of a, b, c and meeting the other two.
/// The smallest index plays the base role, so the result does not depend on the order.
inline BigPi0Conic big_pi0_conic(const Egg& E, int a, int b, int c) {
  std::array<int, 3> t = {a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) fail(ErrorCode::Precondition, "need three distinct elements");
  const SegreFamily fam = segre_family(E, t[1], t[2], t[0]);
  BigPi0Conic out;
  out.elements = fam.v_elements;
  for (int x : t)
    if (!std::binary_search(out.elements.begin(), out.elements.end(), x))
      fail(ErrorCode::SpanTooSmall, "family misses one of the three elements", {{"element", x}});
  Matrix rows;
  for (int e : out.elements) rows.insert(rows.end(), E.elements[e].rows().begin(), E.elements[e].rows().end());
  out.span = Subspace::from_rows(E.field, E.ambient_dim(), rows);
  if (out.elements.size() != E.q() + 1 || out.span.rank() != 3 * E.n)
    fail(ErrorCode::SpanTooSmall, "conic family does not span a (3n-1)-space with q+1 elements",
         {{"elements", out.elements}, {"rank", out.span.rank()}});
  for (int e : out.elements) out.tangent_spaces.push_back(meet(out.span, E.tangents[e]));
  return out;
}

}  // namespace tgq::pi0
