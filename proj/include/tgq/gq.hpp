#pragma once

// Finite point-line incidence structures and generalized quadrangle machinery:
// axioms, perps, regularity, triads, grids and symmetry search.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <tuple>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tgq/error.hpp"

namespace tgq {

using Index = std::int32_t;
using IndexList = std::vector<Index>;

class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}
  void set(std::size_t a, std::size_t b) { bits_[a * words_ + b / 64] |= std::uint64_t(1) << (b % 64); }
  bool get(std::size_t a, std::size_t b) const { return (bits_[a * words_ + b / 64] >> (b % 64)) & 1; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Sorted point->lines and line->points adjacency lists; collinearity and concurrency
/// bit matrices are built on first use when small enough.
class IncidenceStructure {
 public:
  static constexpr std::size_t kBitsetLimit = 20000;

  IncidenceStructure() = default;
  IncidenceStructure(std::size_t v, std::vector<IndexList> line_points, std::vector<std::string> labels = {})
      : points_on_(std::move(line_points)), lines_on_(v), labels_(std::move(labels)) {
    for (std::size_t l = 0; l < points_on_.size(); ++l) {
      auto& pts = points_on_[l];
      std::sort(pts.begin(), pts.end());
      if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        fail(ErrorCode::Precondition, "repeated point on line " + std::to_string(l), {{"line", l}});
      for (Index p : pts) {
        if (p < 0 || static_cast<std::size_t>(p) >= v) fail(ErrorCode::Parse, "point index out of range", {{"line", l}});
        lines_on_[p].push_back(static_cast<Index>(l));
      }
    }
  }
  static IncidenceStructure from_incidences(std::size_t v, std::size_t b, const std::vector<std::pair<Index, Index>>& inc) {
    std::vector<IndexList> lp(b);
    for (const auto& [p, l] : inc) {
      if (l < 0 || static_cast<std::size_t>(l) >= b) fail(ErrorCode::Parse, "line index out of range");
      lp[l].push_back(p);
    }
    return IncidenceStructure(v, std::move(lp));
  }

  std::size_t v() const { return lines_on_.size(); }
  std::size_t b() const { return points_on_.size(); }
  const IndexList& points_on(Index l) const { return points_on_[l]; }
  const IndexList& lines_on(Index p) const { return lines_on_[p]; }
  const std::vector<IndexList>& line_lists() const { return points_on_; }
  const std::vector<IndexList>& point_lists() const { return lines_on_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool incident(Index p, Index l) const { return std::binary_search(points_on_[l].begin(), points_on_[l].end(), p); }

  /// Common element of two sorted lists, or -1.
  static Index common(const IndexList& a, const IndexList& b) {
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i < *j)
        ++i;
      else if (*j < *i)
        ++j;
      else
        return *i;
    }
    return -1;
  }
  /// Line through two distinct points, or -1.
  Index join(Index x, Index y) const { return common(lines_on_[x], lines_on_[y]); }
  /// Point on two distinct lines, or -1.
  Index meet_point(Index l, Index m) const { return common(points_on_[l], points_on_[m]); }

  bool collinear(Index x, Index y) const {
    if (x == y) return true;
    if (const BitMatrix* bm = collinearity()) return bm->get(x, y);
    return join(x, y) >= 0;
  }
  bool concurrent(Index l, Index m) const {
    if (l == m) return true;
    if (const BitMatrix* bm = concurrency()) return bm->get(l, m);
    return meet_point(l, m) >= 0;
  }

  const BitMatrix* collinearity() const {
    if (v() > kBitsetLimit) return nullptr;
    std::call_once(cache_->col_once, [&] {
      cache_->col = BitMatrix(v());
      for (const auto& pts : points_on_)
        for (Index a : pts)
          for (Index b : pts) cache_->col.set(a, b);
    });
    return &cache_->col;
  }
  const BitMatrix* concurrency() const {
    if (b() > kBitsetLimit) return nullptr;
    std::call_once(cache_->con_once, [&] {
      cache_->con = BitMatrix(b());
      for (const auto& ls : lines_on_)
        for (Index a : ls)
          for (Index c : ls) cache_->con.set(a, c);
    });
    return &cache_->con;
  }

  IncidenceStructure dual() const {
    std::vector<IndexList> lp(lines_on_.begin(), lines_on_.end());
    return IncidenceStructure(b(), std::move(lp));
  }

  std::vector<std::pair<Index, Index>> incidences() const {
    std::vector<std::pair<Index, Index>> out;
    for (std::size_t l = 0; l < b(); ++l)
      for (Index p : points_on_[l]) out.emplace_back(p, static_cast<Index>(l));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Cache {
    std::once_flag col_once, con_once;
    BitMatrix col, con;
  };
  std::vector<IndexList> points_on_;
  std::vector<IndexList> lines_on_;
  std::vector<std::string> labels_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct GQCheckOptions {
  bool full = false;
  std::uint64_t seed = 0;
  std::uint64_t full_limit = 100000000;  // v*b
  std::uint64_t sample_size = 1000000;
};

struct GQOrder {
  int s = 0, t = 0;
  std::string mode;  // "full" or "sample"
  std::uint64_t seed = 0;
  std::uint64_t pairs_checked = 0;
};

/// Verifies the GQ axioms and returns the order (s,t).
inline GQOrder gq_check(const IncidenceStructure& S, const GQCheckOptions& opt = {}) {
  if (S.v() == 0 || S.b() == 0) fail(ErrorCode::Precondition, "empty incidence structure");
  const std::size_t v = S.v(), b = S.b();
  const std::size_t line_size = S.points_on(0).size(), point_deg = S.lines_on(0).size();
  for (std::size_t l = 0; l < b; ++l)
    if (S.points_on(Index(l)).size() != line_size)
      fail(ErrorCode::NotConstantDegree, "lines of different sizes", {{"line", l}});
  for (std::size_t p = 0; p < v; ++p)
    if (S.lines_on(Index(p)).size() != point_deg)
      fail(ErrorCode::NotConstantDegree, "points of different degrees", {{"point", p}});
  if (line_size < 2 || point_deg < 2) fail(ErrorCode::AxiomFail, "s and t must be at least 1");
  const int s = int(line_size) - 1, t = int(point_deg) - 1;

  // (i) two points on at most one line; (ii) two lines share at most one point.
  std::vector<std::uint32_t> stamp(std::max(v, b), 0);
  std::uint32_t round = 0;
  for (std::size_t p = 0; p < v; ++p) {
    ++round;
    for (Index l : S.lines_on(Index(p)))
      for (Index y : S.points_on(l)) {
        if (y == Index(p)) continue;
        if (stamp[y] == round) fail(ErrorCode::AxiomFail, "(i) two points on two lines", {{"axiom", "i"}, {"points", {p, y}}});
        stamp[y] = round;
      }
  }
  std::fill(stamp.begin(), stamp.end(), 0);
  round = 0;
  for (std::size_t l = 0; l < b; ++l) {
    ++round;
    for (Index p : S.points_on(Index(l)))
      for (Index m : S.lines_on(p)) {
        if (m == Index(l)) continue;
        if (stamp[m] == round) fail(ErrorCode::AxiomFail, "(ii) two lines share two points", {{"axiom", "ii"}, {"lines", {l, m}}});
        stamp[m] = round;
      }
  }

  // (iii): for x not on L exactly one point of L is collinear with x.
  GQOrder out{s, t, "", opt.seed, 0};
  const bool full = opt.full || std::uint64_t(v) * b <= opt.full_limit;
  out.mode = full ? "full" : "sample";
  std::vector<std::uint32_t> mark(v, 0);
  round = 0;
  auto check_pair = [&](Index x, Index l) {
    int hits = 0;
    for (Index y : S.points_on(l))
      if (y == x) return;
      else if (mark[y] == round)
        ++hits;
    ++out.pairs_checked;
    if (hits != 1)
      fail(ErrorCode::AxiomFail, "(iii) connector count " + std::to_string(hits), {{"axiom", "iii"}, {"point", x}, {"line", l}});
  };
  auto mark_perp = [&](Index x) {
    ++round;
    for (Index l : S.lines_on(x))
      for (Index y : S.points_on(l)) mark[y] = round;
  };
  if (full) {
    for (std::size_t x = 0; x < v; ++x) {
      mark_perp(Index(x));
      for (std::size_t l = 0; l < b; ++l) check_pair(Index(x), Index(l));
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint64_t> px(0, v - 1), pl(0, b - 1);
    std::vector<std::pair<Index, Index>> samples(opt.sample_size);
    for (auto& sp : samples) sp = {Index(px(rng)), Index(pl(rng))};
    std::sort(samples.begin(), samples.end());
    Index current = -1;
    for (const auto& [x, l] : samples) {
      if (x != current) {
        mark_perp(x);
        current = x;
      }
      check_pair(x, l);
    }
  }

  const std::uint64_t st1 = std::uint64_t(s) * t + 1;
  if (v != (s + 1) * st1 || b != (t + 1) * st1)
    fail(ErrorCode::AxiomFail, "point/line counts contradict the order", {{"v", v}, {"b", b}, {"s", s}, {"t", t}});
  if ((std::uint64_t(s) * t * (s + 1) * (t + 1)) % (s + t) != 0)
    fail(ErrorCode::AxiomFail, "s+t does not divide st(s+1)(t+1)", {{"s", s}, {"t", t}});
  return out;
}

/// One side of the geometry: elements (points or lines) and the blocks joining them.
/// The point side has elements = points and blocks = lines; the line side is the dual.
class Side {
 public:
  enum Kind { Points, Lines };
  Side(const IncidenceStructure& S, Kind k) : S_(&S), kind_(k) {}

  Kind kind() const { return kind_; }
  std::size_t count() const { return kind_ == Points ? S_->v() : S_->b(); }
  std::size_t block_count() const { return kind_ == Points ? S_->b() : S_->v(); }
  const IndexList& blocks_of(Index a) const { return kind_ == Points ? S_->lines_on(a) : S_->points_on(a); }
  const IndexList& members(Index blk) const { return kind_ == Points ? S_->points_on(blk) : S_->lines_on(blk); }
  bool adjacent(Index a, Index b) const { return kind_ == Points ? S_->collinear(a, b) : S_->concurrent(a, b); }
  bool blocks_adjacent(Index x, Index y) const { return kind_ == Points ? S_->concurrent(x, y) : S_->collinear(x, y); }
  Index join(Index a, Index b) const { return kind_ == Points ? S_->join(a, b) : S_->meet_point(a, b); }
  Index block_join(Index x, Index y) const { return kind_ == Points ? S_->meet_point(x, y) : S_->join(x, y); }
  bool fast_adjacency() const { return kind_ == Points ? S_->collinearity() != nullptr : S_->concurrency() != nullptr; }
  bool fast_block_adjacency() const { return kind_ == Points ? S_->concurrency() != nullptr : S_->collinearity() != nullptr; }
  const IncidenceStructure& structure() const { return *S_; }

 private:
  const IncidenceStructure* S_;
  Kind kind_;
};

/// a^perp (contains a), sorted.
inline IndexList perp_of(const Side& side, Index a) {
  IndexList out{a};
  for (Index blk : side.blocks_of(a))
    for (Index c : side.members(blk))
      if (c != a) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// {a,b}^perp, sorted.
inline IndexList pair_perp(const Side& side, Index a, Index b) {
  if (a == b) return perp_of(side, a);
  IndexList out;
  if (side.adjacent(a, b)) {
    const Index blk = side.join(a, b);
    out = side.members(blk);
    return out;
  }
  // For each block through a and each block through b that meet, their join is in the perp.
  const std::size_t da = side.blocks_of(a).size(), db = side.blocks_of(b).size();
  const std::size_t size = side.members(side.blocks_of(a)[0]).size();
  const bool via_blocks = side.fast_block_adjacency() && da * db <= 4 * da * size;
  if (via_blocks) {
    for (Index x : side.blocks_of(a))
      for (Index y : side.blocks_of(b))
        if (side.blocks_adjacent(x, y)) out.push_back(side.block_join(x, y));
  } else {
    for (Index x : side.blocks_of(a))
      for (Index c : side.members(x))
        if (c != a && side.adjacent(c, b)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// A^perp for an arbitrary set.
inline IndexList perp_set(const Side& side, const IndexList& A) {
  if (A.empty()) {
    IndexList all(side.count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = Index(i);
    return all;
  }
  if (A.size() == 1) return perp_of(side, A[0]);
  IndexList cand = pair_perp(side, A[0], A[1]);
  IndexList out;
  for (Index c : cand) {
    bool ok = true;
    for (std::size_t i = 2; i < A.size() && ok; ++i) ok = side.adjacent(c, A[i]);
    if (ok) out.push_back(c);
  }
  return out;
}

/// {a,b}^perp-perp.
inline IndexList double_perp(const Side& side, Index a, Index b) { return perp_set(side, pair_perp(side, a, b)); }

struct RegularityReport {
  std::string object;  // "point", "line", "pair"
  Index index = -1;
  bool regular = true;
  std::uint64_t pairs_tested = 0;    // nonadjacent partners covered
  std::uint64_t classes_tested = 0;  // distinct double perps computed
  std::size_t perp_size = 0;
  std::size_t double_perp_size = 0;
  std::vector<Index> witness;  // an irregular partner
};

/// Expected |{a,b}^perp| for nonadjacent a, b on the given side: t+1 for points, s+1 for lines.
inline std::size_t nonadjacent_perp_size(const Side& side) {
  const IncidenceStructure& S = side.structure();
  return side.kind() == Side::Points ? S.lines_on(0).size() : S.points_on(0).size();
}

/// Regularity of {a,b} for nonadjacent a,b (adjacent pairs are regular by definition).
inline RegularityReport pair_regularity(const Side& side, Index a, Index b) {
  RegularityReport r;
  r.object = "pair";
  r.index = a;
  r.pairs_tested = 1;
  if (side.adjacent(a, b)) return r;
  const auto p = pair_perp(side, a, b);
  const auto pp = perp_set(side, p);
  r.classes_tested = 1;
  r.perp_size = p.size();
  r.double_perp_size = pp.size();
  r.regular = pp.size() == nonadjacent_perp_size(side);
  if (!r.regular) r.witness = {b};
  return r;
}

/// Regularity of an element against every nonadjacent partner. A computed double perp
/// {a,b}^perp-perp equals {a,c}^perp-perp for each c in it, so those partners are skipped.
inline RegularityReport element_regularity(const Side& side, Index a) {
  RegularityReport r;
  r.object = side.kind() == Side::Points ? "point" : "line";
  r.index = a;
  const std::size_t target = nonadjacent_perp_size(side);
  std::vector<char> skip(side.count(), 0);
  for (Index c : perp_of(side, a)) skip[c] = 1;
  for (std::size_t b = 0; b < side.count(); ++b) {
    if (skip[b]) continue;
    const auto p = pair_perp(side, a, Index(b));
    const auto pp = perp_set(side, p);
    ++r.classes_tested;
    r.perp_size = p.size();
    if (pp.size() != target || p.size() != target) {
      r.regular = false;
      r.double_perp_size = pp.size();
      r.witness = {Index(b)};
      ++r.pairs_tested;
      return r;
    }
    r.double_perp_size = pp.size();
    for (Index c : pp)
      if (c != a && !skip[c]) {
        skip[c] = 1;
        ++r.pairs_tested;
      }
  }
  return r;
}

/// A point is coregular when every line through it is regular.
inline std::vector<RegularityReport> coregularity(const IncidenceStructure& S, Index x) {
  std::vector<RegularityReport> out;
  Side lines(S, Side::Lines);
  for (Index l : S.lines_on(x)) out.push_back(element_regularity(lines, l));
  return out;
}

/// Centers of a triad of points.
inline IndexList triad_centers(const IncidenceStructure& S, Index x, Index y, Index z) {
  if (x == y || y == z || x == z || S.collinear(x, y) || S.collinear(y, z) || S.collinear(x, z))
    fail(ErrorCode::NotATriad, "points are not pairwise noncollinear", {{"triad", {x, y, z}}});
  Side pts(S, Side::Points);
  return perp_set(pts, {x, y, z});
}

struct TriadCensus {
  std::uint64_t triads = 0;
  std::map<std::size_t, std::uint64_t> center_histogram;
  std::string mode;
};

/// Center counts over all triads (full) or a seeded sample.
inline TriadCensus triad_census(const IncidenceStructure& S, bool full, std::uint64_t samples = 100000, std::uint64_t seed = 0) {
  TriadCensus c;
  Side pts(S, Side::Points);
  const std::size_t v = S.v();
  if (full) {
    c.mode = "full";
    for (std::size_t x = 0; x < v; ++x)
      for (std::size_t y = x + 1; y < v; ++y) {
        if (S.collinear(Index(x), Index(y))) continue;
        const auto p = pair_perp(pts, Index(x), Index(y));
        for (std::size_t z = y + 1; z < v; ++z) {
          if (S.collinear(Index(x), Index(z)) || S.collinear(Index(y), Index(z))) continue;
          std::size_t centers = 0;
          for (Index w : p) centers += S.collinear(w, Index(z));
          ++c.triads;
          ++c.center_histogram[centers];
        }
      }
  } else {
    c.mode = "sample";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    while (c.triads < samples) {
      const Index x = Index(pick(rng)), y = Index(pick(rng)), z = Index(pick(rng));
      if (x == y || y == z || x == z || S.collinear(x, y) || S.collinear(y, z) || S.collinear(x, z)) continue;
      ++c.triads;
      ++c.center_histogram[triad_centers(S, x, y, z).size()];
    }
  }
  return c;
}

struct Grid {
  IncidenceStructure structure;
  IndexList rows;     // {L0,L1}^perp-perp, global line indices (contains L0, L1)
  IndexList columns;  // {L0,L1}^perp
  std::vector<IndexList> node;  // node[i][j] = rows[i] meet columns[j], global point index
  IndexList points;   // global point index of each grid point
};

/// The (s+1)x(s+1) grid spanned by a regular pair of disjoint lines.
inline Grid grid_of(const IncidenceStructure& S, Index l0, Index l1) {
  Side lines(S, Side::Lines);
  if (S.concurrent(l0, l1)) fail(ErrorCode::Precondition, "lines are concurrent");
  Grid g;
  g.columns = pair_perp(lines, l0, l1);
  g.rows = perp_set(lines, g.columns);
  if (g.rows.size() != g.columns.size())
    fail(ErrorCode::PairNotRegular, "pair of lines is not regular", {{"lines", {l0, l1}}, {"double_perp", g.rows.size()}});
  const std::size_t k = g.rows.size();
  g.node.assign(k, IndexList(k));
  std::vector<IndexList> local_lines(2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Index p = S.meet_point(g.rows[i], g.columns[j]);
      g.node[i][j] = p;
      const Index local = Index(i * k + j);
      g.points.push_back(p);
      local_lines[i].push_back(local);
      local_lines[k + j].push_back(local);
    }
  g.structure = IncidenceStructure(k * k, std::move(local_lines));
  return g;
}

struct Collineation {
  IndexList point_map, line_map;
  friend bool operator<(const Collineation& a, const Collineation& b) {
    return std::tie(a.point_map, a.line_map) < std::tie(b.point_map, b.line_map);
  }
  friend bool operator==(const Collineation& a, const Collineation& b) {
    return a.point_map == b.point_map && a.line_map == b.line_map;
  }
  Collineation then(const Collineation& o) const {
    Collineation c{point_map, line_map};
    for (auto& x : c.point_map) x = o.point_map[x];
    for (auto& x : c.line_map) x = o.line_map[x];
    return c;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < point_map.size(); ++i)
      if (point_map[i] != Index(i)) return false;
    for (std::size_t i = 0; i < line_map.size(); ++i)
      if (line_map[i] != Index(i)) return false;
    return true;
  }
};

inline bool is_collineation(const IncidenceStructure& S, const Collineation& c) {
  if (c.point_map.size() != S.v() || c.line_map.size() != S.b()) return false;
  std::vector<char> seen(std::max(S.v(), S.b()), 0);
  for (Index x : c.point_map) {
    if (x < 0 || seen[x]) return false;
    seen[x] = 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  for (Index x : c.line_map) {
    if (x < 0 || seen[x]) return false;
    seen[x] = 1;
  }
  for (std::size_t l = 0; l < S.b(); ++l) {
    IndexList img;
    for (Index p : S.points_on(Index(l))) img.push_back(c.point_map[p]);
    std::sort(img.begin(), img.end());
    if (img != S.points_on(c.line_map[l])) return false;
  }
  return true;
}

namespace detail {

/// Extends a partial collineation by forced moves; false on contradiction.
class SymmetrySearch {
 public:
  explicit SymmetrySearch(const IncidenceStructure& S) : S_(S) {}

  struct State {
    IndexList pm, lm, pinv, linv;
  };

  bool set_point(State& st, Index x, Index y, std::deque<std::pair<bool, Index>>& q) const {
    if (st.pm[x] == y) return true;
    if (st.pm[x] != -1 || st.pinv[y] != -1) return false;
    st.pm[x] = y;
    st.pinv[y] = x;
    q.emplace_back(true, x);
    return true;
  }
  bool set_line(State& st, Index l, Index m, std::deque<std::pair<bool, Index>>& q) const {
    if (st.lm[l] == m) return true;
    if (st.lm[l] != -1 || st.linv[m] != -1) return false;
    st.lm[l] = m;
    st.linv[m] = l;
    q.emplace_back(false, l);
    return true;
  }

  /// The point of line l collinear with x (x not on l), or -1.
  Index foot(Index x, Index l) const {
    for (Index y : S_.points_on(l))
      if (S_.collinear(x, y)) return y;
    return -1;
  }

  bool propagate(State& st, std::deque<std::pair<bool, Index>>& q) const {
    while (!q.empty()) {
      const auto [is_point, a] = q.front();
      q.pop_front();
      if (is_point) {
        const Index img = st.pm[a];
        for (Index l : S_.lines_on(a)) {
          if (st.lm[l] != -1) {
            if (!S_.incident(img, st.lm[l])) return false;
            continue;
          }
          for (Index y : S_.points_on(l))
            if (y != a && st.pm[y] != -1) {
              const Index m = S_.join(img, st.pm[y]);
              if (m < 0 || !set_line(st, l, m, q)) return false;
              break;
            }
        }
        for (std::size_t l = 0; l < S_.b(); ++l) {
          if (st.lm[l] == -1 || S_.incident(a, Index(l))) continue;
          const Index z = foot(a, Index(l));
          const Index zi = foot(img, st.lm[l]);
          if (z < 0 || zi < 0 || !set_point(st, z, zi, q)) return false;
        }
      } else {
        const Index img = st.lm[a];
        for (Index x : S_.points_on(a)) {
          if (st.pm[x] != -1) {
            if (!S_.incident(st.pm[x], img)) return false;
            continue;
          }
          for (Index m : S_.lines_on(x))
            if (m != a && st.lm[m] != -1) {
              const Index y = S_.meet_point(img, st.lm[m]);
              if (y < 0 || !set_point(st, x, y, q)) return false;
              break;
            }
        }
        for (std::size_t x = 0; x < S_.v(); ++x) {
          if (st.pm[x] == -1 || S_.incident(Index(x), a)) continue;
          const Index z = foot(Index(x), a);
          const Index zi = foot(st.pm[x], img);
          if (z < 0 || zi < 0 || !set_point(st, z, zi, q)) return false;
        }
      }
    }
    return true;
  }

  void search(State st, std::vector<Collineation>& out) const {
    Index pick = -1;
    for (std::size_t x = 0; x < S_.v(); ++x)
      if (st.pm[x] == -1) {
        pick = Index(x);
        break;
      }
    if (pick == -1) {
      for (std::size_t l = 0; l < S_.b(); ++l)
        if (st.lm[l] == -1) return;  // points determine lines in a GQ; unmapped line means failure
      Collineation c{st.pm, st.lm};
      if (is_collineation(S_, c)) out.push_back(std::move(c));
      return;
    }
    // Candidate images: points on the image of a mapped line through pick, else all free points.
    IndexList cand;
    for (Index l : S_.lines_on(pick))
      if (st.lm[l] != -1) {
        for (Index y : S_.points_on(st.lm[l]))
          if (st.pinv[y] == -1) cand.push_back(y);
        break;
      }
    if (cand.empty())
      for (std::size_t y = 0; y < S_.v(); ++y)
        if (st.pinv[y] == -1) cand.push_back(Index(y));
    for (Index y : cand) {
      State next = st;
      std::deque<std::pair<bool, Index>> q;
      if (set_point(next, pick, y, q) && propagate(next, q)) search(std::move(next), out);
    }
  }

 private:
  const IncidenceStructure& S_;
};

}  // namespace detail

/// All symmetries about line l: collineations fixing every line concurrent with l.
inline std::vector<Collineation> symmetry_group_about(const IncidenceStructure& S, Index l, std::size_t max_points = 500) {
  if (S.v() > max_points) fail(ErrorCode::TooLarge, "symmetry search limited to " + std::to_string(max_points) + " points");
  detail::SymmetrySearch search(S);
  detail::SymmetrySearch::State st{IndexList(S.v(), -1), IndexList(S.b(), -1), IndexList(S.v(), -1), IndexList(S.b(), -1)};
  std::deque<std::pair<bool, Index>> q;
  Side lines(S, Side::Lines);
  for (Index m : perp_of(lines, l))
    if (!search.set_line(st, m, m, q)) fail(ErrorCode::Inconsistent, "inconsistent initial map");
  std::vector<Collineation> out;
  if (search.propagate(st, q)) search.search(std::move(st), out);
  std::sort(out.begin(), out.end());
  return out;
}

/// True when the set is closed under composition (finite, so also under inverses).
inline bool is_group(const std::vector<Collineation>& g) {
  std::set<Collineation> set(g.begin(), g.end());
  bool has_id = false;
  for (const auto& a : g) {
    has_id = has_id || a.is_identity();
    for (const auto& b : g)
      if (!set.count(a.then(b))) return false;
  }
  return has_id;
}

}  // namespace tgq
