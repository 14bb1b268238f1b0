#pragma once

// The translation generalized quadrangle T(O) of an egg, modelled in PG(2n+m,q) with
// H = {x_{2n+m} = 0} carrying the egg. Affine points are identified with GF(q)^{2n+m}.
//
// Point indices: affine vectors in lexicographic order (code = sum v_k q^{N-1-k}), then the
// points over tangent spaces grouped by element (q^n each), then (inf).
// Line indices: lines over elements grouped by element (q^{n+m} each), then the elements.

#include <memory>
#include <string>
#include <vector>

#include "tgq/egg.hpp"
#include "tgq/gq.hpp"

namespace tgq {

/// Cosets v + W of a linear subspace W of GF(q)^N, indexed by the non-pivot coordinates
/// of the reduced representative.
class CosetCodec {
 public:
  CosetCodec() = default;
  CosetCodec(const Subspace& w, unsigned q) : w_(w), q_(q) {
    std::vector<char> piv(w.ambient_dim() + 1, 0);
    for (int p : w.pivots()) piv[p] = 1;
    for (int c = 0; c <= w.ambient_dim(); ++c)
      if (!piv[c]) free_.push_back(c);
  }
  std::size_t count() const { return ipow(q_, static_cast<unsigned>(free_.size())); }
  std::size_t index(const Vec& v) const {
    const Vec r = w_.reduce(v);
    std::size_t k = 0;
    for (int c : free_) k = k * q_ + r[c];
    return k;
  }
  Vec representative(std::size_t k) const {
    Vec v(w_.ambient_dim() + 1, 0);
    for (auto it = free_.rbegin(); it != free_.rend(); ++it) {
      v[*it] = static_cast<Elem>(k % q_);
      k /= q_;
    }
    return v;
  }
  const Subspace& subspace() const { return w_; }

 private:
  Subspace w_;
  unsigned q_ = 0;
  std::vector<int> free_;
};

class TModel {
 public:
  explicit TModel(const Egg& egg) : egg_(std::make_shared<Egg>(egg)) {
    const Egg& e = *egg_;
    q_ = e.q();
    N_ = e.ambient_dim() + 1;
    k_ = e.size();
    affine_ = ipow(q_, N_);
    per_tangent_ = ipow(q_, e.n);
    per_element_lines_ = ipow(q_, e.n + e.m);
    for (std::size_t i = 0; i < k_; ++i) {
      elem_codec_.emplace_back(e.elements[i], q_);
      tan_codec_.emplace_back(e.tangents[i], q_);
    }
    build();
  }

  const Egg& egg() const { return *egg_; }
  const IncidenceStructure& structure() const { return S_; }
  unsigned q() const { return q_; }
  int vector_length() const { return N_; }
  std::size_t affine_count() const { return affine_; }
  Index infinity() const { return Index(affine_ + k_ * per_tangent_); }
  Index tangent_point(std::size_t i, std::size_t c) const { return Index(affine_ + i * per_tangent_ + c); }
  Index affine_line(std::size_t i, std::size_t c) const { return Index(i * per_element_lines_ + c); }
  Index element_line(std::size_t i) const { return Index(k_ * per_element_lines_ + i); }
  std::size_t lines_per_element() const { return per_element_lines_; }

  enum class PointType { Affine, Tangent, Infinity };
  enum class LineType { OverElement, Element };
  PointType point_type(Index p) const {
    if (std::size_t(p) < affine_) return PointType::Affine;
    return p == infinity() ? PointType::Infinity : PointType::Tangent;
  }
  LineType line_type(Index l) const { return std::size_t(l) < k_ * per_element_lines_ ? LineType::OverElement : LineType::Element; }
  /// Egg element of a line (either type) or of a point over a tangent space.
  std::size_t element_of_line(Index l) const {
    return line_type(l) == LineType::Element ? std::size_t(l) - k_ * per_element_lines_ : std::size_t(l) / per_element_lines_;
  }
  std::size_t element_of_point(Index p) const { return (std::size_t(p) - affine_) / per_tangent_; }

  Vec affine_vector(Index p) const {
    Vec v(N_);
    std::size_t c = std::size_t(p);
    for (int k = N_ - 1; k >= 0; --k) {
      v[k] = static_cast<Elem>(c % q_);
      c /= q_;
    }
    return v;
  }
  Index affine_index(const Vec& v) const {
    std::size_t c = 0;
    for (Elem x : v) c = c * q_ + x;
    return Index(c);
  }
  /// A vector on the affine part of a line over an element.
  Vec line_representative(Index l) const {
    return elem_codec_[element_of_line(l)].representative(std::size_t(l) % per_element_lines_);
  }
  Vec tangent_point_representative(Index p) const {
    const std::size_t i = element_of_point(p);
    return tan_codec_[i].representative(std::size_t(p) - affine_ - i * per_tangent_);
  }

  /// Line over element i through the affine point v.
  Index line_through_affine(std::size_t i, const Vec& v) const { return affine_line(i, elem_codec_[i].index(v)); }

  /// Projective subspace of PG(N,q) represented by a point or line (affine coordinate appended as 1).
  Subspace point_subspace(Index p) const {
    const auto& f = egg_->field;
    switch (point_type(p)) {
      case PointType::Affine: {
        Vec v = affine_vector(p);
        v.push_back(1);
        return Subspace::point(f, v);
      }
      case PointType::Tangent: {
        const std::size_t i = element_of_point(p);
        Matrix rows = lift(egg_->tangents[i].rows());
        Vec v = tangent_point_representative(p);
        v.push_back(1);
        rows.push_back(v);
        return Subspace::from_rows(f, N_, rows);
      }
      default:
        fail(ErrorCode::Precondition, "(inf) is not a subspace");
    }
  }
  Subspace line_subspace(Index l) const {
    const auto& f = egg_->field;
    const std::size_t i = element_of_line(l);
    Matrix rows = lift(egg_->elements[i].rows());
    if (line_type(l) == LineType::OverElement) {
      Vec v = line_representative(l);
      v.push_back(1);
      rows.push_back(v);
    }
    return Subspace::from_rows(f, N_, rows);
  }
  /// Embeds rows of H into PG(N,q) by appending a zero coordinate.
  static Matrix lift(const Matrix& rows) {
    Matrix out = rows;
    for (auto& r : out) r.push_back(0);
    return out;
  }

  std::string point_label(Index p) const {
    auto vec_str = [](const Vec& v) {
      std::string s = "(";
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
      return s + ")";
    };
    switch (point_type(p)) {
      case PointType::Affine: return "affine " + vec_str(affine_vector(p));
      case PointType::Tangent:
        return "tangent " + std::to_string(element_of_point(p)) + " + " + vec_str(tangent_point_representative(p));
      default: return "(inf)";
    }
  }
  std::string line_label(Index l) const {
    if (line_type(l) == LineType::Element) return "element " + std::to_string(element_of_line(l));
    std::string s = "over " + std::to_string(element_of_line(l)) + " + (";
    const Vec v = line_representative(l);
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
  }

  /// The collineation induced by the affine translation x -> x + w.
  Collineation translation(const Vec& w) const {
    const FiniteField& F = *egg_->field;
    Collineation c{IndexList(S_.v()), IndexList(S_.b())};
    for (std::size_t p = 0; p < affine_; ++p) {
      Vec v = affine_vector(Index(p));
      for (int k = 0; k < N_; ++k) v[k] = F.add(v[k], w[k]);
      c.point_map[p] = affine_index(v);
    }
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t a = 0; a < per_tangent_; ++a) {
        Vec v = tan_codec_[i].representative(a);
        for (int k = 0; k < N_; ++k) v[k] = F.add(v[k], w[k]);
        c.point_map[tangent_point(i, a)] = tangent_point(i, tan_codec_[i].index(v));
      }
      for (std::size_t a = 0; a < per_element_lines_; ++a) {
        Vec v = elem_codec_[i].representative(a);
        for (int k = 0; k < N_; ++k) v[k] = F.add(v[k], w[k]);
        c.line_map[affine_line(i, a)] = affine_line(i, elem_codec_[i].index(v));
      }
      c.line_map[element_line(i)] = element_line(i);
    }
    c.point_map[infinity()] = infinity();
    return c;
  }

  /// Translations by the vectors of element i: the symmetries about the element line.
  std::vector<Collineation> line_symmetries(std::size_t i) const {
    std::vector<Collineation> out;
    for (const auto& lam : all_vectors(egg_->n)) out.push_back(translation(combine(*egg_->field, lam, egg_->elements[i].rows())));
    return out;
  }

  std::vector<Vec> all_vectors(int r) const {
    std::vector<Vec> out;
    const std::size_t total = ipow(q_, r);
    for (std::size_t c = 0; c < total; ++c) {
      Vec v(r);
      std::size_t x = c;
      for (int k = r - 1; k >= 0; --k) {
        v[k] = static_cast<Elem>(x % q_);
        x /= q_;
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  void build() {
    const std::size_t v = affine_ + k_ * per_tangent_ + 1;
    const std::size_t b = k_ * per_element_lines_ + k_;
    std::vector<IndexList> lines(b);
    for (std::size_t p = 0; p < affine_; ++p) {
      const Vec x = affine_vector(Index(p));
      for (std::size_t i = 0; i < k_; ++i) lines[line_through_affine(i, x)].push_back(Index(p));
    }
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t a = 0; a < per_element_lines_; ++a) {
        const Vec rep = elem_codec_[i].representative(a);
        lines[affine_line(i, a)].push_back(tangent_point(i, tan_codec_[i].index(rep)));
      }
      for (std::size_t c = 0; c < per_tangent_; ++c) lines[element_line(i)].push_back(tangent_point(i, c));
      lines[element_line(i)].push_back(infinity());
    }
    S_ = IncidenceStructure(v, std::move(lines));
  }

  std::shared_ptr<const Egg> egg_;
  unsigned q_ = 0;
  int N_ = 0;
  std::size_t k_ = 0, affine_ = 0, per_tangent_ = 0, per_element_lines_ = 0;
  std::vector<CosetCodec> elem_codec_, tan_codec_;
  IncidenceStructure S_;
};

/// Checks that a collineation fixes every line concurrent with line l.
inline bool fixes_star_of(const IncidenceStructure& S, const Collineation& c, Index l) {
  Side lines(S, Side::Lines);
  for (Index m : perp_of(lines, l))
    if (c.line_map[m] != m) return false;
  return true;
}

struct TranslationPointVerdict {
  bool translation_point = true;
  std::vector<std::size_t> group_orders;  // per line through the point
  Index witness_line = -1;
  std::string method;
};

/// Whether every line through p is an axis of symmetry (group of order s), by search.
inline TranslationPointVerdict axes_through(const IncidenceStructure& S, Index p, std::size_t max_points = 500) {
  const std::size_t s = S.points_on(0).size() - 1;
  TranslationPointVerdict v;
  v.method = "search";
  for (Index l : S.lines_on(p)) {
    const auto group = symmetry_group_about(S, l, max_points);
    v.group_orders.push_back(group.size());
    if (group.size() != s && v.translation_point) {
      v.translation_point = false;
      v.witness_line = l;
    }
  }
  return v;
}

/// (inf) is decided by the translation symmetries of the element lines; any other point by
/// brute-force symmetry search on the lines through it.
inline TranslationPointVerdict translation_point_check(const TModel& T, Index p, std::size_t max_points = 500) {
  const IncidenceStructure& S = T.structure();
  const std::size_t s = S.points_on(0).size() - 1;
  TranslationPointVerdict v;
  if (p == T.infinity()) {
    v.method = "translations";
    for (std::size_t i = 0; i < T.egg().size(); ++i) {
      const auto group = T.line_symmetries(i);
      bool ok = group.size() == s;
      for (const auto& g : group) ok = ok && is_collineation(S, g) && fixes_star_of(S, g, T.element_line(i));
      v.group_orders.push_back(group.size());
      if (!ok && v.translation_point) {
        v.translation_point = false;
        v.witness_line = T.element_line(i);
      }
    }
    return v;
  }
  return axes_through(S, p, max_points);
}

/// Span of the vector spaces of all elements (the symmetry directions).
inline Subspace symmetry_direction_span(const Egg& e) {
  Matrix rows;
  for (const auto& el : e.elements) rows.insert(rows.end(), el.rows().begin(), el.rows().end());
  return Subspace::from_rows(e.field, e.ambient_dim(), rows);
}

}  // namespace tgq
