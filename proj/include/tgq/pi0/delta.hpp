#pragma once

#include <optional>
#include <random>
#include <unordered_map>

#include "tgq/pi0/pi0set.hpp"

namespace tgq::pi0 {

/// The q+1 members of the regulus through three pairwise skew (n-1)-spaces A, B, C of a
/// (2n-1)-space: writing C = {a + phi(a)}, the members are <a + lambda phi(a)>, lambda
/// in GF(q), and B. Returned in the order A, lambda = 1, ..., q-1 (code order), B.
inline std::vector<Subspace> regulus(const Subspace& A, const Subspace& B, const Subspace& C) {
  const FiniteField& F = *A.field();
  const std::size_t n = A.rank();
  if (B.rank() != int(n) || C.rank() != int(n) || !meet(A, B).is_empty() || !meet(A, C).is_empty() || !meet(B, C).is_empty())
    fail(ErrorCode::Precondition, "regulus needs three pairwise skew subspaces of equal rank");
  Matrix basis = A.rows();
  basis.insert(basis.end(), B.rows().begin(), B.rows().end());
  Matrix alpha, beta;
  for (const auto& c : C.rows()) {
    const Vec co = solve_combination(F, basis, c);
    if (co.empty()) fail(ErrorCode::Precondition, "C is not inside <A, B>");
    alpha.push_back(combine(F, Vec(co.begin(), co.begin() + n), A.rows()));
    beta.push_back(combine(F, Vec(co.begin() + n, co.end()), B.rows()));
  }
  std::vector<Subspace> out = {A};
  for (Elem lam = 1; lam < F.q(); ++lam) {
    Matrix rows;
    for (std::size_t r = 0; r < n; ++r) {
      Vec v(alpha[r].size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = F.add(alpha[r][k], F.mul(lam, beta[r][k]));
      rows.push_back(std::move(v));
    }
    out.push_back(Subspace::from_rows(A.field(), A.ambient_dim(), std::move(rows)));
  }
  out.push_back(B);
  return out;
}

/// Projection from pi_0 onto a complement Phi, with the spaces it induces.
struct DeltaFrame {
  std::shared_ptr<const Egg> egg;
  Subspace pi0, phi, tau_star;
  std::vector<Subspace> pi_star;  // indexed by element; entry 0 is empty
  std::vector<Subspace> xi;       // 2n-spaces of Phi through tau_star
  std::vector<Subspace> xi_bar;   // <pi_0, xi_i>
  std::vector<std::vector<Vec>> z;         // z[i][j]: the point of pi_j in xi_bar_i
  std::vector<std::vector<Vec>> xi_points; // xi_points[i][j]: xi_i meet pi_star_j
  nlohmann::json checks;
  bool pass = true;

  /// delta(v): the Phi component of v in the decomposition pi_0 + Phi.
  Vec project(const Vec& v) const {
    const FiniteField& F = *egg->field;
    const Vec c = mat_vec(F, coord_, v);
    const std::size_t n = pi0.rank();
    Vec out = combine(F, Vec(c.begin() + n, c.end()), phi.rows());
    normalize(F, out);
    return out;
  }
  /// Element j whose star space contains the Phi point v, 0 for points of tau_star, -1 if none.
  int star_owner(const Vec& v) const {
    Vec w = v;
    normalize(*egg->field, w);
    return star_owner_[index_->index_normalized(w)];
  }
  std::size_t xi_count() const { return xi.size(); }

  friend DeltaFrame delta_frame(const Egg& E, std::optional<Subspace> phi, bool full);

 private:
  Matrix coord_;
  std::shared_ptr<const PointIndex> index_;
  std::vector<int> star_owner_;
};

/// Complement of pi_0 spanned by unit vectors at its non-pivot columns.
inline Subspace canonical_complement(const Subspace& s) {
  Matrix rows;
  const int d = s.ambient_dim() + 1;
  for (int c = 0; c < d; ++c)
    if (std::find(s.pivots().begin(), s.pivots().end(), c) == s.pivots().end()) {
      Vec v(d, 0);
      v[c] = 1;
      rows.push_back(std::move(v));
    }
  return Subspace::from_rows(s.field(), s.ambient_dim(), std::move(rows));
}

/// Seeded random complement of pi_0.
inline Subspace random_complement(const Subspace& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const FiniteField& F = *s.field();
  const int d = s.ambient_dim() + 1;
  for (;;) {
    Matrix rows;
    for (int r = 0; r < d - s.rank(); ++r) {
      Vec v(d);
      for (auto& x : v) x = static_cast<Elem>(rng() % F.q());
      rows.push_back(std::move(v));
    }
    Subspace c = Subspace::from_rows(s.field(), s.ambient_dim(), rows);
    if (c.rank() == d - s.rank() && meet(c, s).is_empty()) return c;
  }
}

/// Builds the frame and checks the partition of Phi and the regulus property of pairs of
/// star spaces. `full` checks every pair; otherwise pairs with one fixed member.
inline DeltaFrame delta_frame(const Egg& E, std::optional<Subspace> phi_in = std::nullopt, bool full = false) {
  if (E.m != 2 * E.n) fail(ErrorCode::NotM2N, "the projection frame needs m = 2n");
  const FiniteField& F = *E.field;
  const int n = E.n;
  const std::size_t K = E.size();
  DeltaFrame fr;
  fr.egg = std::make_shared<Egg>(E);
  fr.pi0 = E.elements[0];
  fr.phi = phi_in ? *phi_in : canonical_complement(fr.pi0);
  if (fr.phi.ambient_dim() != E.ambient_dim() || fr.phi.rank() != 3 * n || !meet(fr.phi, fr.pi0).is_empty())
    fail(ErrorCode::PhiNotComplementary, "Phi must be a (3n-1)-space skew to pi_0");
  Matrix basis = fr.pi0.rows();
  basis.insert(basis.end(), fr.phi.rows().begin(), fr.phi.rows().end());
  fr.coord_ = inverse(F, transpose(basis));

  auto check = [&](const std::string& name, bool ok, nlohmann::json w = nullptr) {
    fr.checks[name] = ok;
    if (!ok) {
      fr.pass = false;
      if (!w.is_null()) fr.checks[name + "_witness"] = std::move(w);
    }
  };

  fr.tau_star = meet(E.tangents[0], fr.phi);
  check("tau_star_dim", fr.tau_star.rank() == 2 * n, {{"rank", fr.tau_star.rank()}});
  fr.pi_star.assign(K, Subspace::empty(E.field, E.ambient_dim()));
  for (std::size_t j = 1; j < K; ++j) fr.pi_star[j] = meet(span(fr.pi0, E.elements[j]), fr.phi);

  // Pointwise partition of Phi.
  fr.index_ = std::make_shared<PointIndex>(E.field, E.ambient_dim());
  fr.star_owner_.assign(fr.index_->size(), -1);
  bool partition = true;
  nlohmann::json pw;
  auto mark = [&](const Subspace& s, int owner) {
    for (auto p : fr.index_->indices_of(s)) {
      if (fr.star_owner_[p] != -1 && partition) {
        partition = false;
        pw = {{"point", fr.index_->point(p)}, {"owners", {fr.star_owner_[p], owner}}};
      }
      fr.star_owner_[p] = owner;
    }
  };
  mark(fr.tau_star, 0);
  bool dims = true;
  for (std::size_t j = 1; j < K; ++j) {
    if (fr.pi_star[j].rank() != n) dims = false;
    mark(fr.pi_star[j], static_cast<int>(j));
  }
  std::size_t covered = 0;
  for (auto p : fr.index_->indices_of(fr.phi)) covered += fr.star_owner_[p] != -1;
  check("star_dims", dims);
  check("phi_partition", partition && covered == point_count(E.q(), 3 * n), pw.is_null() ? nlohmann::json{{"covered", covered}} : pw);

  // Lemma: the regulus through pi*_i, pi*_j and <pi*_i, pi*_j> meet tau* holds exactly q star spaces.
  std::unordered_map<Subspace, int, SubspaceHash> star_id;
  for (std::size_t j = 1; j < K; ++j) star_id.emplace(fr.pi_star[j], static_cast<int>(j));
  std::size_t pairs = 0;
  bool reg_ok = true;
  nlohmann::json rw;
  for (std::size_t a = 1; a < K && reg_ok; ++a) {
    for (std::size_t b = a + 1; b < K && reg_ok; ++b) {
      const Subspace pij = meet(span(fr.pi_star[a], fr.pi_star[b]), fr.tau_star);
      std::size_t hits = 0;
      for (const auto& member : regulus(fr.pi_star[a], fr.pi_star[b], pij))
        if (member != pij && star_id.count(member)) ++hits;
      ++pairs;
      if (pij.rank() != n || hits != E.q()) {
        reg_ok = false;
        rw = {{"pair", {a, b}}, {"star_spaces_in_regulus", hits}, {"rank", pij.rank()}};
      }
    }
    if (!full) break;
  }
  check("regulus_holds_q_star_spaces", reg_ok, rw);
  fr.checks["regulus_pairs_checked"] = pairs;

  // xi_i = <tau*, w> for the points w of pi*_1, a complement of tau* in Phi.
  for (const auto& w : points_of(fr.pi_star[1])) {
    fr.xi.push_back(span(fr.tau_star, Subspace::point(E.field, w)));
    fr.xi_bar.push_back(span(fr.pi0, fr.xi.back()));
  }
  check("xi_count", fr.xi.size() == point_count(E.q(), n), {{"xi", fr.xi.size()}});
  bool z_ok = true, xp_ok = true;
  for (std::size_t i = 0; i < fr.xi.size(); ++i) {
    fr.z.emplace_back(K);
    fr.xi_points.emplace_back(K);
    for (std::size_t j = 1; j < K; ++j) {
      fr.z[i][j] = single_point(meet(fr.xi_bar[i], E.elements[j]));
      fr.xi_points[i][j] = single_point(meet(fr.xi[i], fr.pi_star[j]));
      if (fr.z[i][j].empty()) z_ok = false;
      if (fr.xi_points[i][j].empty()) xp_ok = false;
    }
  }
  check("z_sets_have_q2n_points", z_ok);
  check("xi_meets_star_spaces_in_points", xp_ok);
  return fr;
}

/// Local coordinates of v in the basis rows of s, normalized.
inline Vec local_coords(const Subspace& s, const Vec& v) {
  Vec c = solve_combination(*s.field(), s.rows(), v);
  if (!c.empty()) normalize(*s.field(), c);
  return c;
}

struct AlphaReport {
  std::size_t i = 0, j = 0;
  bool linear = false;          // a projectivity with trivial field automorphism reproduces all points
  int automorphism = -1;        // Frobenius power of the fitted map, -1 if none fits
  bool infinity_preserved = false;
  std::size_t checked = 0;
  Projectivity map;             // on local coordinates of xi_i to those of xi_j
  nlohmann::json witness;
};

/// Fits the map xi_i meet pi*_k -> xi_j meet pi*_k and checks it on every k.
inline AlphaReport alpha_linearity(const DeltaFrame& fr, std::size_t i, std::size_t j) {
  const Egg& E = *fr.egg;
  if (E.q() == 2) fail(ErrorCode::QTwoGap, "linearity of the alpha maps is open for q = 2");
  if (i == j || i >= fr.xi.size() || j >= fr.xi.size()) fail(ErrorCode::Precondition, "need two distinct xi indices");
  AlphaReport r;
  r.i = i;
  r.j = j;
  std::vector<std::pair<Vec, Vec>> pairs;
  for (std::size_t k = 1; k < E.size(); ++k)
    pairs.emplace_back(local_coords(fr.xi[i], fr.xi_points[i][k]), local_coords(fr.xi[j], fr.xi_points[j][k]));
  const int d = 2 * E.n;
  for (unsigned frob = 0; frob < E.field->e(); ++frob) {
    Projectivity p;
    try {
      p = fit_projectivity(E.field, pairs, d, frob);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Inconsistent) throw;
      continue;
    }
    std::size_t ok = 0;
    for (const auto& [s, t] : pairs) ok += p.apply(s) == t;
    if (ok != pairs.size()) {
      if (frob == 0) r.witness = {{"reproduced", ok}, {"of", pairs.size()}};
      continue;
    }
    r.map = p;
    r.automorphism = static_cast<int>(frob);
    r.linear = frob == 0;
    r.checked = pairs.size();
    r.infinity_preserved = true;
    for (const auto& x : points_of(fr.tau_star)) {
      const Vec img = combine(*E.field, p.apply(local_coords(fr.xi[i], x)), fr.xi[j].rows());
      if (!fr.tau_star.contains_vector(img)) r.infinity_preserved = false;
    }
    break;
  }
  return r;
}

/// Applies an alpha report to a point of xi_i, giving a point of xi_j.
inline Vec alpha_apply(const DeltaFrame& fr, const AlphaReport& a, const Vec& x) {
  Vec v = combine(*fr.egg->field, a.map.apply(local_coords(fr.xi[a.i], x)), fr.xi[a.j].rows());
  normalize(*fr.egg->field, v);
  return v;
}

/// For every direction d in tau*, the affine lines of xi_i with point at infinity d: their
/// reguli share one space at infinity and the matching conic families share one tangent
/// space at pi_0. Returns the space at infinity per direction (empty on failure).
struct ParallelClassReport {
  std::size_t xi_index = 0;
  bool pass = true;
  std::vector<Vec> directions;
  std::vector<Subspace> infinity_space;  // aligned with directions
  std::vector<Subspace> tangent_space;   // <pi_0, pi_a, pi_b> meet tau_0
  nlohmann::json witness;
};

inline ParallelClassReport parallel_classes(const DeltaFrame& fr, std::size_t i) {
  const Egg& E = *fr.egg;
  const FiniteField& F = *E.field;
  ParallelClassReport r;
  r.xi_index = i;
  for (const auto& d : points_of(fr.tau_star)) {
    std::vector<char> seen(E.size(), 0);
    std::optional<Subspace> inf, tan;
    bool ok = true;
    for (std::size_t a = 1; a < E.size() && ok; ++a) {
      if (seen[a]) continue;
      const Vec& x = fr.xi_points[i][a];
      std::vector<int> line;
      for (Elem lam = 0; lam < F.q(); ++lam) {
        Vec y(x.size());
        for (std::size_t c = 0; c < y.size(); ++c) y[c] = F.add(x[c], F.mul(lam, d[c]));
        const int o = fr.star_owner(y);
        if (o <= 0) {
          ok = false;
          r.witness = {{"direction", d}, {"reason", "affine point of xi outside every star space"}};
          break;
        }
        seen[o] = 1;
        line.push_back(o);
      }
      if (!ok) break;
      const Subspace infs = meet(span(fr.pi_star[line[0]], fr.pi_star[line[1]]), fr.tau_star);
      const Subspace tans = meet(span({fr.pi0, E.elements[line[0]], E.elements[line[1]]}), E.tangents[0]);
      if (!inf) {
        inf = infs;
        tan = tans;
      } else if (*inf != infs || *tan != tans) {
        ok = false;
        r.witness = {{"direction", d}, {"elements", line}};
      }
    }
    if (!ok) {
      r.pass = false;
      break;
    }
    r.directions.push_back(d);
    r.infinity_space.push_back(*inf);
    r.tangent_space.push_back(*tan);
  }
  return r;
}

/// The q^n points xi_i meet pi*_k for the elements k != 0 of a set, with the check that
/// they form an affine n-space of xi_i, that the tangent lines at pi_0 of the conics on
/// pairs of them span a (2n-1)-space through pi_0, and that exactly the conics whose
/// projected line passes through gamma_0's point at infinity have tangent inside gamma_0.
struct XiStarReport {
  std::size_t xi_index = 0;
  std::vector<Vec> points;
  Subspace span, infinity, beta;
  bool affine = false;
  bool tangents_in_beta = false;
  bool gamma_lines_match = false;
  std::size_t conics = 0;
  nlohmann::json witness;
  bool pass() const { return affine && tangents_in_beta && gamma_lines_match; }
};

inline XiStarReport xi_star(const DeltaFrame& fr, const Pi0Set& P, std::size_t i) {
  const Egg& E = *fr.egg;
  if (E.q() == 2) fail(ErrorCode::QTwoGap, "affine structure of xi* is open for q = 2");
  XiStarReport r;
  r.xi_index = i;
  for (std::size_t a = 1; a < P.elements.size(); ++a) r.points.push_back(fr.xi_points[i][P.elements[a]]);
  r.span = Subspace::from_rows(E.field, E.ambient_dim(), r.points);
  r.infinity = meet(r.span, fr.tau_star);
  std::size_t affine_pts = point_count(E.q(), r.span.rank()) - point_count(E.q(), r.infinity.rank());
  std::set<Vec> pts(r.points.begin(), r.points.end());
  r.affine = r.span.rank() == E.n + 1 && r.infinity.rank() == E.n && affine_pts == pts.size();
  if (!r.affine) r.witness["affine"] = {{"span_rank", r.span.rank()}, {"infinity_rank", r.infinity.rank()}};
  r.beta = span(fr.pi0, r.infinity);

  const Vec xstar = single_point(meet(P.gammas[0], fr.tau_star));
  Subspace tangent_span = fr.pi0;
  r.tangents_in_beta = r.beta.rank() == 2 * E.n;
  r.gamma_lines_match = !xstar.empty();
  std::set<Subspace> lines_done;
  for (std::size_t a = 1; a < P.elements.size(); ++a)
    for (std::size_t b = a + 1; b < P.elements.size(); ++b) {
      const int ea = P.elements[a], eb = P.elements[b];
      const Subspace line = Subspace::from_rows(E.field, E.ambient_dim(), {fr.xi_points[i][ea], fr.xi_points[i][eb]});
      if (!lines_done.insert(line).second) continue;
      const Pi0Conic c = pi0_conic_through(E, 0, eb, ea, fr.z[i][ea]);
      ++r.conics;
      if (c.point_on(eb) != fr.z[i][eb]) {
        r.tangents_in_beta = false;
        r.witness["conic"] = {{"pair", {ea, eb}}, {"reason", "conic misses the second point of Z"}};
      }
      const Subspace& t0 = c.tangents[c.slot_of(0)];
      if (!r.beta.contains(t0)) r.tangents_in_beta = false;
      tangent_span = span(tangent_span, t0);
      const bool through_x = line.contains_vector(xstar);
      if (through_x != P.gammas[0].contains(t0)) {
        r.gamma_lines_match = false;
        r.witness["gamma_line"] = {{"pair", {ea, eb}}};
      }
    }
  if (tangent_span != r.beta) {
    r.tangents_in_beta = false;
    r.witness["beta_rank"] = tangent_span.rank();
  }
  return r;
}

}  // namespace tgq::pi0
