#pragma once

// Flocks of the quadratic cone x0 x2 = x1^2 of PG(3,q) with vertex (0,0,0,1), and the
// q-clan coset geometry attached to a flock.

#include <array>
#include <map>
#include <optional>
#include <set>

#include "tgq/gq.hpp"
#include "tgq/projgeom.hpp"

namespace tgq {

/// Plane a x0 + b x1 + c x2 + x3 = 0.
using FlockPlane = std::array<Elem, 4>;

/// Points of the base conic x0 x2 = x1^2 in the plane x3 = 0: (1,s,s^2) then (0,0,1).
inline std::vector<std::array<Elem, 3>> cone_base(const FiniteField& F) {
  std::vector<std::array<Elem, 3>> out;
  for (Elem s = 0; s < F.q(); ++s) out.push_back({1, s, F.mul(s, s)});
  out.push_back({0, 0, 1});
  return out;
}

/// The q(q+1) cone points off the vertex, generator by generator.
inline std::vector<Vec> cone_points(const FiniteField& F) {
  std::vector<Vec> out;
  for (const auto& b : cone_base(F))
    for (Elem x3 = 0; x3 < F.q(); ++x3) out.push_back({b[0], b[1], b[2], x3});
  return out;
}

struct Flock {
  FieldPtr field;
  std::vector<FlockPlane> planes;
  std::vector<std::vector<Vec>> sections;  // aligned with planes
  std::vector<ConicForm> conics;
};

/// Scales a plane so that its x3 coefficient is 1.
inline FlockPlane normalize_plane(const FiniteField& F, FlockPlane p) {
  if (p[3] == 0) fail(ErrorCode::VertexOnPlane, "plane passes through the vertex", {{"plane", p}});
  const Elem s = F.inv(p[3]);
  for (auto& x : p) x = F.mul(x, s);
  return p;
}

inline Subspace plane_subspace(const FieldPtr& f, const FlockPlane& p) {
  return Subspace::from_rows(f, 3, null_space(*f, Matrix{Vec(p.begin(), p.end())}, 4));
}

/// Checks that the sections of the q planes partition the cone minus its vertex and that
/// each section is a nonsingular conic.
inline Flock flock_validate(const FieldPtr& f, std::vector<FlockPlane> planes) {
  const FiniteField& F = *f;
  const unsigned q = F.q();
  if (planes.size() != q) fail(ErrorCode::WrongCount, "a flock has q planes", {{"planes", planes.size()}, {"q", q}});
  Flock fl;
  fl.field = f;
  for (auto& p : planes) {
    for (Elem x : p)
      if (x >= q) fail(ErrorCode::FieldMismatch, "coefficient outside the field", {{"plane", p}});
    p = normalize_plane(F, p);
  }
  fl.planes = std::move(planes);
  fl.sections.resize(q);

  // Each non-vertex point lies on exactly one plane.
  std::map<Vec, int> owner;
  for (const auto& x : cone_points(F))
    for (unsigned t = 0; t < q; ++t) {
      const auto& p = fl.planes[t];
      Elem v = 0;
      for (int k = 0; k < 4; ++k) v = F.add(v, F.mul(p[k], x[k]));
      if (v != 0) continue;
      if (auto it = owner.find(x); it != owner.end())
        fail(ErrorCode::Overlap, "two sections share a point", {{"planes", {it->second, t}}, {"point", x}});
      owner[x] = static_cast<int>(t);
      fl.sections[t].push_back(x);
    }
  for (const auto& x : cone_points(F))
    if (!owner.count(x)) fail(ErrorCode::Gap, "cone point in no section", {{"point", x}});

  for (unsigned t = 0; t < q; ++t) {
    const auto& sec = fl.sections[t];
    if (sec.size() != q + 1) fail(ErrorCode::ReducibleSection, "section is not a (q+1)-arc", {{"plane", t}});
    for (std::size_t i = 0; i < sec.size(); ++i)
      for (std::size_t j = i + 1; j < sec.size(); ++j)
        for (std::size_t k = j + 1; k < sec.size(); ++k)
          if (rank(F, Matrix{sec[i], sec[j], sec[k]}) < 3)
            fail(ErrorCode::ReducibleSection, "three collinear section points", {{"plane", t}, {"points", {sec[i], sec[j], sec[k]}}});
    // Tangent at sec[0]: the plane meets the cone's tangent plane (x2, -2 x1, x0, 0).
    const Vec& x = sec[0];
    const Vec tan_plane = {x[2], F.neg(F.add(x[1], x[1])), x[0], 0};
    const Vec pl(fl.planes[t].begin(), fl.planes[t].end());
    const Subspace tangent = Subspace::from_rows(f, 3, null_space(F, Matrix{pl, tan_plane}, 4));
    ConicForm c;
    try {
      if (tangent.rank() != 2) fail(ErrorCode::Singular, "no tangent line");
      c = fit_conic(f, 3, {sec[1], sec[2], sec[3]}, {{x, tangent}});
    } catch (const Error& e) {
      fail(ErrorCode::ReducibleSection, std::string("no nonsingular conic through the section: ") + e.what(), {{"plane", t}});
    }
    for (const auto& x : sec)
      if (!c.contains(x)) fail(ErrorCode::ReducibleSection, "section is not a conic", {{"plane", t}, {"point", x}});
    fl.conics.push_back(std::move(c));
  }
  return fl;
}

struct FlockClass {
  bool linear = false;
  bool semifield = false;
  std::vector<int> order;            // order[t] = index of the plane with a = t
  std::optional<nlohmann::json> witness;  // first non-additive pair
};

/// Linear iff all planes share a line.
inline bool linear_test(const Flock& fl) {
  Subspace common = Subspace::whole(fl.field, 3);
  for (const auto& p : fl.planes) common = meet(common, plane_subspace(fl.field, p));
  return common.rank() == 2;
}

/// Additivity of t -> (a_t, b_t, c_t) after indexing the planes by a_t.
inline FlockClass semifield_test(const Flock& fl) {
  const FiniteField& F = *fl.field;
  const unsigned q = F.q();
  FlockClass r;
  r.order.assign(q, -1);
  for (unsigned k = 0; k < q; ++k) {
    const Elem a = fl.planes[k][0];
    if (r.order[a] != -1)
      fail(ErrorCode::NormalizationFail, "x0 coefficient does not index the planes", {{"planes", {r.order[a], k}}, {"a", a}});
    r.order[a] = static_cast<int>(k);
  }
  r.semifield = true;
  for (Elem t = 0; t < q && r.semifield; ++t)
    for (Elem u = 0; u < q && r.semifield; ++u) {
      const auto &pt = fl.planes[r.order[t]], &pu = fl.planes[r.order[u]], &ps = fl.planes[r.order[F.add(t, u)]];
      for (int k = 0; k < 3; ++k)
        if (ps[k] != F.add(pt[k], pu[k])) {
          r.semifield = false;
          r.witness = nlohmann::json{{"t", t}, {"u", u}};
          break;
        }
    }
  r.linear = linear_test(fl);
  return r;
}

/// Planes [t, 0, -n t, 1]: all through the line x3 = 0 = x0 - n x2.
inline std::vector<FlockPlane> linear_flock_planes(const FiniteField& F, Elem n) {
  std::vector<FlockPlane> out;
  for (Elem t = 0; t < F.q(); ++t) out.push_back({t, 0, F.neg(F.mul(n, t)), 1});
  return out;
}

/// Planes [t, 0, -m t^sigma, 1] with sigma = x -> x^(p^e).
inline std::vector<FlockPlane> kantor_knuth_planes(const FiniteField& F, unsigned e, Elem m) {
  std::vector<FlockPlane> out;
  for (Elem t = 0; t < F.q(); ++t) out.push_back({t, 0, F.neg(F.mul(m, F.frobenius(t, e))), 1});
  return out;
}

inline Elem least_nonsquare(const FiniteField& F) {
  for (Elem x = 1; x < F.q(); ++x)
    if (!F.is_square(x)) return x;
  fail(ErrorCode::Precondition, "every element is a square in characteristic 2");
}

/// Coset geometry of the group {(alpha, c, beta)} of order q^5 with the Kantor family
/// built from the flock planes. Points: group elements, cosets A*(t)g, (inf). Lines:
/// cosets A(t)g and one symbol [A(t)] per index t in GF(q) u {inf}.
struct QClanGQ {
  FieldPtr field;
  std::size_t group_order = 0;
  IncidenceStructure structure;
  Index infinity = -1;
  std::vector<std::vector<Index>> family, star_family;  // A(t), A*(t) as group indices; t = q is inf
  nlohmann::json checks;

  struct G {
    Elem a0, a1, c, b0, b1;
  };
  G decode(Index g) const {
    const unsigned q = field->q();
    G x;
    Elem* d[5] = {&x.a0, &x.a1, &x.c, &x.b0, &x.b1};
    for (int k = 4; k >= 0; --k) {
      *d[k] = static_cast<Elem>(g % q);
      g /= q;
    }
    return x;
  }
  Index encode(const G& x) const {
    const unsigned q = field->q();
    Index g = 0;
    for (Elem v : {x.a0, x.a1, x.c, x.b0, x.b1}) g = g * Index(q) + v;
    return g;
  }
  /// (a, c, b)(a', c', b') = (a + a', c + c' + b.a', b + b').
  Index mul(Index x, Index y) const {
    const FiniteField& F = *field;
    const G g = decode(x), h = decode(y);
    const Elem dot = F.add(F.mul(g.b0, h.a0), F.mul(g.b1, h.a1));
    return encode({F.add(g.a0, h.a0), F.add(g.a1, h.a1), F.add(F.add(g.c, h.c), dot), F.add(g.b0, h.b0), F.add(g.b1, h.b1)});
  }
  /// Right multiplication by h as a collineation; it fixes (inf) and every symbol line.
  Collineation right_multiplication(Index h) const;

 private:
  friend QClanGQ qclan_gq(const Flock&);
  std::vector<std::vector<Index>> point_of_coset_, line_of_coset_;  // [t][g]
  Index first_symbol_ = 0;
};

inline Collineation QClanGQ::right_multiplication(Index h) const {
  const std::size_t n = group_order, T = family.size();
  Collineation c;
  c.point_map.resize(structure.v());
  c.line_map.resize(structure.b());
  for (std::size_t i = 0; i < structure.v(); ++i) c.point_map[i] = Index(i);
  for (std::size_t i = 0; i < structure.b(); ++i) c.line_map[i] = Index(i);
  for (std::size_t g = 0; g < n; ++g) {
    const Index gh = mul(Index(g), h);
    c.point_map[g] = gh;
    for (std::size_t t = 0; t < T; ++t) {
      c.point_map[point_of_coset_[t][g]] = point_of_coset_[t][gh];
      c.line_map[line_of_coset_[t][g]] = line_of_coset_[t][gh];
    }
  }
  return c;
}

inline QClanGQ qclan_gq(const Flock& fl) {
  const FiniteField& F = *fl.field;
  const unsigned q = F.q();
  if (q % 2 == 0) fail(ErrorCode::Unsupported, "q-clan construction is implemented for q odd");
  QClanGQ Q;
  Q.field = fl.field;
  const std::size_t n = std::size_t(q) * q * q * q * q;
  Q.group_order = n;
  const std::size_t T = q + 1;
  using G = QClanGQ::G;

  // A_t = [[a, b], [0, c]], K_t = A_t + A_t^T.
  for (const auto& p : fl.planes) {
    std::vector<Index> A, S;
    const Elem a = p[0], b = p[1], c = p[2], a2 = F.add(a, a), c2 = F.add(c, c);
    for (Elem x = 0; x < q; ++x)
      for (Elem y = 0; y < q; ++y) {
        const Elem form = F.add(F.add(F.mul(a, F.mul(x, x)), F.mul(b, F.mul(x, y))), F.mul(c, F.mul(y, y)));
        const Elem k0 = F.add(F.mul(x, a2), F.mul(y, b)), k1 = F.add(F.mul(x, b), F.mul(y, c2));
        A.push_back(Q.encode(G{x, y, form, k0, k1}));
        for (Elem z = 0; z < q; ++z) S.push_back(Q.encode(G{x, y, z, k0, k1}));
      }
    Q.family.push_back(std::move(A));
    Q.star_family.push_back(std::move(S));
  }
  {
    std::vector<Index> A, S;
    for (Elem x = 0; x < q; ++x)
      for (Elem y = 0; y < q; ++y) {
        A.push_back(Q.encode(G{0, 0, 0, x, y}));
        for (Elem z = 0; z < q; ++z) S.push_back(Q.encode(G{0, 0, z, x, y}));
      }
    Q.family.push_back(std::move(A));
    Q.star_family.push_back(std::move(S));
  }
  for (auto& A : Q.family) std::sort(A.begin(), A.end());
  for (auto& S : Q.star_family) std::sort(S.begin(), S.end());

  // Family conditions: A(s)A(t) meets A(u) trivially, A*(s) meets A(t) trivially.
  const Index one = 0;
  for (std::size_t s = 0; s < T; ++s)
    for (std::size_t t = s + 1; t < T; ++t) {
      std::vector<char> prod(n, 0);
      for (Index x : Q.family[s])
        for (Index y : Q.family[t]) prod[Q.mul(x, y)] = 1;
      for (std::size_t u = 0; u < T; ++u) {
        if (u == s || u == t) continue;
        for (Index z : Q.family[u])
          if (z != one && prod[z])
            fail(ErrorCode::FourGonalFail, "A(s)A(t) meets A(u) nontrivially", {{"s", s}, {"t", t}, {"u", u}, {"element", z}});
      }
    }
  for (std::size_t s = 0; s < T; ++s)
    for (std::size_t t = 0; t < T; ++t) {
      if (s == t) continue;
      std::vector<Index> common;
      std::set_intersection(Q.star_family[s].begin(), Q.star_family[s].end(), Q.family[t].begin(), Q.family[t].end(),
                            std::back_inserter(common));
      if (common.size() != 1)
        fail(ErrorCode::FourGonalFail, "A*(s) meets A(t) nontrivially", {{"s", s}, {"t", t}, {"size", common.size()}});
    }
  Q.checks["four_gonal"] = true;

  // Right cosets Hg, labelled by order of first appearance.
  auto cosets = [&](const std::vector<Index>& H, Index base) {
    std::vector<Index> label(n, -1);
    Index next = base;
    for (std::size_t g = 0; g < n; ++g) {
      if (label[g] != -1) continue;
      for (Index h : H) label[Q.mul(h, Index(g))] = next;
      ++next;
    }
    return std::pair{label, next};
  };
  Index v = Index(n), b = 0;
  Q.point_of_coset_.resize(T);
  Q.line_of_coset_.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    auto [pl, pv] = cosets(Q.star_family[t], v);
    auto [ll, lb] = cosets(Q.family[t], b);
    Q.point_of_coset_[t] = std::move(pl);
    Q.line_of_coset_[t] = std::move(ll);
    v = pv;
    b = lb;
  }
  Q.infinity = v++;
  Q.first_symbol_ = b;
  std::vector<IndexList> lines(b + T);
  for (std::size_t t = 0; t < T; ++t) {
    std::set<Index> star_points;
    for (std::size_t g = 0; g < n; ++g) {
      const Index l = Q.line_of_coset_[t][g];
      lines[l].push_back(Index(g));
      star_points.insert(Q.point_of_coset_[t][g]);
    }
    // The line A(t)g lies in the coset A*(t)g.
    std::vector<char> done(b, 0);
    for (std::size_t g = 0; g < n; ++g) {
      const Index l = Q.line_of_coset_[t][g];
      if (done[l]) continue;
      done[l] = 1;
      lines[l].push_back(Q.point_of_coset_[t][g]);
    }
    auto& sym = lines[b + t];
    sym.assign(star_points.begin(), star_points.end());
    sym.push_back(Q.infinity);
  }
  Q.structure = IncidenceStructure(std::size_t(v), std::move(lines));
  return Q;
}

struct ElationReport {
  bool collineations = true;  // every right multiplication preserves incidence
  bool fixes_infinity_linewise = true;
  bool regular = true;        // orbit of the identity is all of G, trivial stabilizer
  std::size_t opposite_points = 0;
  bool opposite_are_group = true;
};

/// Right multiplication acts as collineations fixing (inf) linewise and regularly on the
/// points not collinear with (inf).
inline ElationReport elation_check(const QClanGQ& Q) {
  ElationReport r;
  const auto& S = Q.structure;
  const std::size_t n = Q.group_order;
  std::vector<char> near(S.v(), 0);
  for (Index l : S.lines_on(Q.infinity))
    for (Index p : S.points_on(l)) near[p] = 1;
  for (std::size_t p = 0; p < S.v(); ++p)
    if (!near[p]) {
      ++r.opposite_points;
      if (p >= n) r.opposite_are_group = false;
    }
  if (r.opposite_points != n) r.opposite_are_group = false;
  std::vector<char> hit(n, 0);
  for (std::size_t h = 0; h < n; ++h) {
    const Collineation c = Q.right_multiplication(Index(h));
    if (!is_collineation(S, c)) r.collineations = false;
    if (c.point_map[Q.infinity] != Q.infinity) r.fixes_infinity_linewise = false;
    for (Index l : S.lines_on(Q.infinity))
      if (c.line_map[l] != l) r.fixes_infinity_linewise = false;
    const Index img = c.point_map[0];
    if (img < 0 || std::size_t(img) >= n || hit[img]) r.regular = false;
    else hit[img] = 1;
  }
  return r;
}

}  // namespace tgq
