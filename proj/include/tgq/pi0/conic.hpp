#pragma once

#include <map>
#include <vector>

#include "tgq/tgq_model.hpp"

namespace tgq::pi0 {

/// The point of a rank-1 subspace, or an empty vector.
inline Vec single_point(const Subspace& s) { return s.rank() == 1 ? s.rows()[0] : Vec{}; }

/// Hyperplane X_N = 0 of PG(N,q).
inline Subspace hyperplane_at_infinity(const FieldPtr& f, int N) {
  Matrix rows(N, Vec(N + 1, 0));
  for (int k = 0; k < N; ++k) rows[k][k] = 1;
  return Subspace::from_rows(f, N, std::move(rows));
}

/// Subspace of the hyperplane X_N = 0 rewritten in the coordinates of that hyperplane.
inline Subspace drop_last(const Subspace& s) {
  Matrix rows = s.rows();
  for (auto& r : rows) {
    if (r.back() != 0) fail(ErrorCode::Precondition, "subspace is not contained in the hyperplane at infinity");
    r.pop_back();
  }
  return Subspace::from_rows(s.field(), s.ambient_dim() - 1, std::move(rows));
}

/// Conic of q+1 points on the union of the egg elements, one per element.
struct Pi0Conic {
  ConicForm conic;
  std::vector<Vec> points;
  std::vector<int> contact;        // element containing points[k]
  std::vector<Subspace> tangents;  // tangent line at points[k]
  Subspace rho;                    // the 2n-space the conic was built in
  std::map<int, Subspace> gammas;  // n-spaces gamma_i known from the construction

  const Subspace& plane() const { return conic.plane; }
  int slot_of(int element) const {
    for (std::size_t k = 0; k < contact.size(); ++k)
      if (contact[k] == element) return static_cast<int>(k);
    return -1;
  }
  const Vec& point_on(int element) const {
    const int k = slot_of(element);
    if (k < 0) fail(ErrorCode::Precondition, "conic does not meet element " + std::to_string(element));
    return points[k];
  }
  bool meets(int element) const { return slot_of(element) >= 0; }
};

namespace detail {

inline Vec sub_combination(const FiniteField& F, const Vec& c, std::size_t from, const Matrix& rows) {
  Vec lam(c.begin() + from, c.begin() + from + rows.size());
  Vec v = combine(F, lam, rows);
  normalize(F, v);
  return v;
}

/// Checks the conic invariants and fills points, contacts and tangents.
inline Pi0Conic finish(const Egg& E, ConicForm c, Subspace rho, std::map<int, Subspace> gammas) {
  Pi0Conic out;
  out.conic = std::move(c);
  out.rho = std::move(rho);
  out.gammas = std::move(gammas);
  if (!conic_nonsingular(out.conic)) fail(ErrorCode::ConicFitFailure, "fitted conic is singular");
  out.points = conic_points(out.conic);
  const std::size_t q = E.q();
  if (out.points.size() != q + 1) fail(ErrorCode::ConicFitFailure, "conic does not have q+1 points");
  for (const auto& p : out.points) {
    const int o = E.owner_of(p);
    if (o < 0) fail(ErrorCode::ConicFitFailure, "conic point is off the egg", {{"point", p}});
    if (std::find(out.contact.begin(), out.contact.end(), o) != out.contact.end())
      fail(ErrorCode::ConicFitFailure, "two conic points in one element", {{"element", o}});
    out.contact.push_back(o);
    Subspace t = conic_tangent(out.conic, p);
    if (meet(out.conic.plane, E.tangents[o]) != t)
      fail(ErrorCode::ConicFitFailure, "tangent line is not the plane section of the tangent space",
           {{"element", o}, {"point", p}});
    auto g = out.gammas.find(o);
    if (g != out.gammas.end() && !g->second.contains(t))
      fail(ErrorCode::ConicFitFailure, "tangent line is not inside gamma", {{"element", o}});
    out.tangents.push_back(std::move(t));
  }
  return out;
}

inline ConicForm fit_or_finding(const FieldPtr& f, int d, const std::vector<Vec>& pts,
                                const std::vector<std::pair<Vec, Subspace>>& tang) {
  try {
    return fit_conic(f, d, pts, tang);
  } catch (const Error& e) {
    fail(ErrorCode::ConicFitFailure, std::string("no conic through the constructed data: ") + e.what());
  }
}

}  // namespace detail

/// Conic through s in element k meeting elements i and j, built from subspaces only:
/// rho = <pi_i, pi_j, s>, gamma = rho meet tau, u = gamma_i meet gamma_j, and the plane
/// <u, s> meeting pi_i and pi_j. Any three distinct elements may be used.
inline Pi0Conic conic_through(const Egg& E, int i, int j, int k, const Vec& s) {
  const FiniteField& F = *E.field;
  const int K = static_cast<int>(E.size());
  if (i == j || i == k || j == k || i < 0 || j < 0 || k < 0 || i >= K || j >= K || k >= K)
    fail(ErrorCode::Precondition, "need three distinct element indices");
  if (!E.elements[k].contains_vector(s) || is_zero(s)) fail(ErrorCode::Precondition, "s is not a point of element k");
  const int n = E.n;
  const auto& pi = E.elements[i];
  const auto& pj = E.elements[j];
  const Subspace sp = Subspace::point(E.field, s);
  Subspace rho = span({pi, pj, sp});
  if (rho.rank() != 2 * n + 1) fail(ErrorCode::DegeneratePlane, "<pi_i, pi_j, s> is not a 2n-space");
  Subspace gi = meet(rho, E.tangents[i]);
  Subspace gj = meet(rho, E.tangents[j]);
  if (gi.rank() != n + 1 || gj.rank() != n + 1) fail(ErrorCode::DegeneratePlane, "gamma is not an n-space");
  const Vec u = single_point(meet(gi, gj));
  if (u.empty()) fail(ErrorCode::DegeneratePlane, "gamma_i and gamma_j do not meet in a point");

  Matrix basis = pi.rows();
  basis.insert(basis.end(), pj.rows().begin(), pj.rows().end());
  basis.push_back(u);
  const Vec c = solve_combination(F, basis, s);
  if (c.empty()) fail(ErrorCode::DegeneratePlane, "s is outside rho");
  const Vec xi = detail::sub_combination(F, c, 0, pi.rows());
  const Vec xj = detail::sub_combination(F, c, n, pj.rows());
  if (is_zero(xi) || is_zero(xj) || c.back() == 0) fail(ErrorCode::DegeneratePlane, "plane through u and s is degenerate");

  const Subspace up = Subspace::point(E.field, u);
  std::vector<std::pair<Vec, Subspace>> tang = {{xi, span(Subspace::point(E.field, xi), up)},
                                                {xj, span(Subspace::point(E.field, xj), up)}};
  ConicForm form = detail::fit_or_finding(E.field, E.ambient_dim(), {s}, tang);
  return detail::finish(E, std::move(form), std::move(rho), {{i, gi}, {j, gj}});
}

/// The conic through s in element k meeting elements i and j, one of which is element 0.
inline Pi0Conic pi0_conic_through(const Egg& E, int i, int j, int k, const Vec& s) {
  if (i != 0 && j != 0 && k != 0) fail(ErrorCode::NotThroughPi0, "element 0 must be one of the three elements");
  return conic_through(E, i, j, k, s);
}

/// gamma_i = <L_i, M_i> meet H for two concurrent lines over the same element.
inline Subspace grid_gamma(const TModel& T, Index L, Index M) {
  const Subspace H = hyperplane_at_infinity(T.egg().field, T.vector_length());
  return drop_last(meet(span(T.line_subspace(L), T.line_subspace(M)), H));
}

/// Conic read off the grid of a regular pair of lines over distinct elements.
inline Pi0Conic grid_conic(const TModel& T, Index L0, Index L1) {
  const Egg& E = T.egg();
  const FiniteField& F = *E.field;
  const IncidenceStructure& S = T.structure();
  const int n = E.n;
  for (Index l : {L0, L1})
    if (l < 0 || std::size_t(l) >= S.b() || T.line_type(l) != TModel::LineType::OverElement)
      fail(ErrorCode::Precondition, "lines must be lines over elements, not through (inf)");
  if (S.concurrent(L0, L1)) fail(ErrorCode::Precondition, "lines are concurrent");
  const int e0 = static_cast<int>(T.element_of_line(L0)), e1 = static_cast<int>(T.element_of_line(L1));
  if (e0 == e1) fail(ErrorCode::Precondition, "lines meet the same element");

  Side lines(S, Side::Lines);
  const IndexList perp = pair_perp(lines, L0, L1);
  const IndexList dperp = perp_set(lines, perp);
  const std::size_t s = S.points_on(0).size() - 1;
  if (dperp.size() != s + 1) fail(ErrorCode::PairNotRegular, "pair is not regular", {{"double_perp", dperp.size()}});

  const Subspace H = hyperplane_at_infinity(E.field, T.vector_length());
  Subspace rho = drop_last(meet(span(T.line_subspace(L0), T.line_subspace(L1)), H));
  if (rho.rank() != 2 * n + 1) fail(ErrorCode::RhoDimension, "rho is not a 2n-space", {{"rank", rho.rank()}});

  std::map<int, Index> Lof, Mof;
  for (Index l : dperp) Lof[static_cast<int>(T.element_of_line(l))] = l;
  for (Index m : perp) Mof[static_cast<int>(T.element_of_line(m))] = m;
  Index L2 = -1;
  for (Index l : dperp)
    if (l != L0 && l != L1) {
      L2 = l;
      break;
    }
  const int e2 = static_cast<int>(T.element_of_line(L2));
  for (int e : {e0, e1, e2})
    if (!Mof.count(e)) fail(ErrorCode::PairNotRegular, "perp has no line over element " + std::to_string(e));

  auto nvec = [&](Index L, Index M) {
    const Index p = S.meet_point(L, M);
    if (p < 0 || T.point_type(p) != TModel::PointType::Affine) fail(ErrorCode::Precondition, "grid point is not affine");
    return T.affine_vector(p);
  };
  auto diff = [&](const Vec& a, const Vec& b) {
    Vec d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) d[k] = F.sub(a[k], b[k]);
    normalize(F, d);
    return d;
  };
  // s_k = (line n_ka n_kb) meet H for the three grid lines.
  const Vec n20 = nvec(L2, Mof[e0]), n21 = nvec(L2, Mof[e1]);
  const Vec s0 = diff(nvec(L0, Mof[e1]), nvec(L0, Mof[e2]));
  const Vec s1 = diff(nvec(L1, Mof[e0]), nvec(L1, Mof[e2]));
  const Vec s2 = diff(n20, n21);

  std::vector<Vec> pts = {s0, s1, s2};
  // Remaining points from the affine points of the line n20 n21.
  for (Elem lam = 0; lam < F.q(); ++lam) {
    if (lam == 0 || lam == 1) continue;
    Vec v(n20.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = F.add(n20[k], F.mul(lam, F.sub(n21[k], n20[k])));
    const Index np = T.affine_index(v);
    Index M = -1;
    for (Index m : perp)
      if (S.incident(np, m)) M = m;
    if (M < 0) fail(ErrorCode::ConicFitFailure, "no perp line through a point of n20 n21");
    const Index m0 = S.meet_point(M, L0), m1 = S.meet_point(M, L1);
    const Vec sk = diff(T.affine_vector(m0), T.affine_vector(m1));
    const int ek = static_cast<int>(T.element_of_line(M));
    if (!E.elements[ek].contains_vector(sk) || !rho.contains_vector(sk))
      fail(ErrorCode::ConicFitFailure, "m0 m1 does not meet rho in the element of M", {{"element", ek}});
    pts.push_back(sk);
  }

  std::map<int, Subspace> gammas;
  for (const auto& [e, L] : Lof)
    if (Mof.count(e)) gammas[e] = grid_gamma(T, L, Mof[e]);
  for (int e : {e0, e1, e2})
    if (!E.elements[e].contains_vector(pts[e == e0 ? 0 : e == e1 ? 1 : 2]))
      fail(ErrorCode::ConicFitFailure, "grid point is not in its element", {{"element", e}});
  const Subspace sigma = Subspace::from_rows(E.field, E.ambient_dim(), pts);
  if (sigma.rank() != 3) fail(ErrorCode::ConicFitFailure, "grid points are not coplanar", {{"rank", sigma.rank()}});
  std::vector<std::pair<Vec, Subspace>> tang = {{s0, meet(gammas.at(e0), sigma)}, {s1, meet(gammas.at(e1), sigma)}};
  for (const auto& [p, t] : tang)
    if (t.rank() != 2) fail(ErrorCode::ConicFitFailure, "gamma does not meet the plane in a line");
  ConicForm form = detail::fit_or_finding(E.field, E.ambient_dim(), {s2}, tang);
  for (const auto& p : pts)
    if (!form.contains(p)) fail(ErrorCode::ConicFitFailure, "grid point is off the fitted conic", {{"point", p}});
  return detail::finish(E, std::move(form), std::move(rho), std::move(gammas));
}

}  // namespace tgq::pi0
