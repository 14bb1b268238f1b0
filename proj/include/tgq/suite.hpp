#pragma once

// Fixed check lists over the standard eggs, shared by the command line and the
// acceptance run.

#include <random>

#include "tgq/parallel.hpp"
#include "tgq/pi0/goodness.hpp"
#include "tgq/report.hpp"

namespace tgq {

/// O(1,2,q) for n = 1, otherwise O(n,2n,q) by field reduction (q prime).
inline Egg standard_egg(unsigned q, unsigned n, const ValidateOptions& opt = {}) {
  if (n == 0) fail(ErrorCode::Precondition, "n must be positive");
  if (n == 1) return elliptic_quadric_egg(q, opt);
  const FieldPtr f = field_of_order(q);
  if (f->e() != 1) fail(ErrorCode::Unsupported, "field reduction is implemented over a prime field");
  return reduced_quadric_egg(q, n, opt);
}

namespace suite {

using nlohmann::json;

/// Planes through s meeting pi_i and pi_j that carry a nonsingular conic through s with
/// tangents the plane sections of tau_i, tau_j at its points on pi_i, pi_j, its points in
/// distinct elements and its tangent at s the section of tau_k. Found by search.
inline std::vector<Subspace> conic_planes_by_search(const Egg& E, int i, int j, int k, const Vec& s) {
  std::set<Subspace> out;
  for (const auto& a : points_of(E.elements[i]))
    for (const auto& b : points_of(E.elements[j])) {
      const Subspace pl = Subspace::from_rows(E.field, E.ambient_dim(), {s, a, b});
      if (pl.rank() != 3) continue;
      const Subspace ta = meet(pl, E.tangents[i]), tb = meet(pl, E.tangents[j]);
      if (ta.rank() != 2 || tb.rank() != 2) continue;
      ConicForm c;
      try {
        c = fit_conic(E.field, E.ambient_dim(), {s}, {{a, ta}, {b, tb}});
      } catch (const Error&) {
        continue;
      }
      const auto pts = conic_points(c);
      std::set<int> owners;
      bool ok = pts.size() == E.q() + 1;
      for (const auto& p : pts) {
        const int o = E.owner_of(p);
        ok = ok && o >= 0 && owners.insert(o).second;
      }
      if (ok && conic_tangent(c, s) == meet(pl, E.tangents[k])) out.insert(pl);
    }
  return {out.begin(), out.end()};
}

inline CheckRecord conic_uniqueness(const Egg& E, std::size_t samples, std::uint64_t seed) {
  CheckRecord r{"conic-uniqueness", "sample", seed};
  std::mt19937_64 rng(seed);
  const int K = static_cast<int>(E.size());
  std::size_t tuples = 0, unique = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    const int a = 1 + int(rng() % (K - 1));
    int b = 1 + int(rng() % (K - 1));
    while (b == a) b = 1 + int(rng() % (K - 1));
    const int roles[3][3] = {{0, a, b}, {a, 0, b}, {a, b, 0}};
    const auto& ro = roles[t % 3];
    const auto pts = points_of(E.elements[ro[2]]);
    const Vec s = pts[rng() % pts.size()];
    const auto planes = conic_planes_by_search(E, ro[0], ro[1], ro[2], s);
    ++tuples;
    const bool ok = planes.size() == 1 && planes[0] == pi0::pi0_conic_through(E, ro[0], ro[1], ro[2], s).plane();
    unique += ok;
    if (!ok && r.pass) {
      r.pass = false;
      r.witnesses["tuple"] = {{"i", ro[0]}, {"j", ro[1]}, {"k", ro[2]}, {"s", s}, {"planes", planes.size()}};
    }
  }
  r.counts = {{"tuples", tuples}, {"unique", unique}};
  return r;
}

/// The first `pairs` pairs (i, j), 0 < i < j, in order.
inline std::vector<std::pair<int, int>> leading_pairs(const Egg& E, std::size_t pairs) {
  std::vector<std::pair<int, int>> out;
  const int K = static_cast<int>(E.size());
  for (int i = 1; i < K && out.size() < pairs; ++i)
    for (int j = i + 1; j < K && out.size() < pairs; ++j) out.emplace_back(i, j);
  return out;
}

inline CheckRecord conic_families(const Egg& E, std::size_t pairs) {
  CheckRecord r{"conic-families"};
  const std::size_t planes_expected = point_count(E.q(), E.n);
  std::size_t done = 0, certified = 0, v_ok = 0;
  for (const auto& [i, j] : leading_pairs(E, pairs)) {
    const auto fam = pi0::segre_family(E, i, j);
    ++done;
    certified += fam.pass && fam.certificate["counts"]["planes"] == planes_expected;
    v_ok += fam.v_elements.size() == E.q() + 1;
    if (!fam.pass && !r.witnesses.contains("family")) r.witnesses["family"] = {{"pair", {i, j}}, {"certificate", fam.certificate}};
  }
  r.counts = {{"pairs", done}, {"certified", certified}, {"planes_per_family", planes_expected}, {"v_sets_of_q_plus_1", v_ok}};
  r.pass = certified == done && v_ok == done;
  return r;
}

inline CheckRecord tangent_meets(const Egg& E, std::size_t pairs) {
  CheckRecord r{E.field->p() == 2 ? "tangent-meets-even" : "tangent-meets-odd"};
  std::size_t done = 0, ok = 0;
  for (const auto& [i, j] : leading_pairs(E, pairs)) {
    const auto c = pi0::eta_configuration(E, i, j);
    ++done;
    ok += c.pass;
    if (!c.pass && !r.witnesses.contains("pair")) r.witnesses["pair"] = {i, j};
  }
  r.counts = {{"pairs", done}, {"pass", ok}};
  r.pass = ok == done;
  return r;
}

inline CheckRecord frame_check(const pi0::DeltaFrame& fr, bool full) {
  CheckRecord r{"projection-frame", full ? "full" : "sample"};
  r.counts = {{"xi", fr.xi_count()},
              {"tau_star_rank", fr.tau_star.rank()},
              {"regulus_pairs", fr.checks["regulus_pairs_checked"]},
              {"star_spaces_per_regulus", fr.egg->q()}};
  r.pass = fr.pass;
  if (!fr.pass) r.witnesses = fr.checks;
  return r;
}

/// Pi0-sets over the first `gammas` points of tau*: each set passes its checks and each
/// partition covers the elements other than 0 once.
inline CheckRecord pi0_sets(const pi0::DeltaFrame& fr, std::size_t gammas, std::vector<pi0::Pi0Set>* keep = nullptr) {
  const Egg& E = *fr.egg;
  CheckRecord r{"pi0-sets"};
  std::size_t sets = 0, ok = 0, partitions = 0, partitions_ok = 0, kernels = 0;
  const auto pts = points_of(fr.tau_star);
  for (std::size_t t = 0; t < std::min(gammas, pts.size()); ++t) {
    const Subspace gamma0 = span(fr.pi0, Subspace::point(E.field, pts[t]));
    bool part = false;
    for (auto& P : pi0::pi0_partition(E, gamma0, &part)) {
      ++sets;
      ok += P.pass;
      kernels += P.kernel.rank() == 1;
      if (!P.pass && !r.witnesses.contains("set")) r.witnesses["set"] = {{"elements", P.elements}, {"checks", P.checks}};
      if (keep) keep->push_back(std::move(P));
    }
    ++partitions;
    partitions_ok += part;
  }
  r.counts = {{"sets", sets}, {"pass", ok}, {"partitions", partitions}, {"partitions_ok", partitions_ok}};
  if (E.field->p() == 2) r.counts["kernel_points"] = kernels;
  r.pass = ok == sets && partitions_ok == partitions && (E.field->p() != 2 || kernels == sets);
  return r;
}

inline CheckRecord alpha_maps(const pi0::DeltaFrame& fr) {
  CheckRecord r{"alpha-linearity"};
  const std::size_t X = fr.xi_count();
  std::size_t pairs = 0, linear = 0, reproduced = 0;
  for (std::size_t i = 0; i < X; ++i)
    for (std::size_t j = 0; j < X; ++j) {
      if (i == j) continue;
      const auto a = pi0::alpha_linearity(fr, i, j);
      ++pairs;
      const bool ok = a.linear && a.infinity_preserved && a.checked == fr.egg->size() - 1;
      linear += ok;
      reproduced += a.checked;
      if (!ok && !r.witnesses.contains("pair")) r.witnesses["pair"] = {{"i", i}, {"j", j}, {"detail", a.witness}};
    }
  r.counts = {{"ordered_pairs", pairs}, {"linear", linear}, {"correspondences_per_pair", fr.egg->size() - 1},
              {"correspondences_reproduced", reproduced}};
  r.pass = linear == pairs;
  return r;
}

inline CheckRecord parallel(const pi0::DeltaFrame& fr) {
  CheckRecord r{"parallel-classes"};
  std::size_t ok = 0;
  for (std::size_t i = 0; i < fr.xi_count(); ++i) {
    const auto p = pi0::parallel_classes(fr, i);
    ok += p.pass;
    if (!p.pass && !r.witnesses.contains("xi")) r.witnesses["xi"] = {{"index", i}, {"detail", p.witness}};
  }
  r.counts = {{"xi", fr.xi_count()}, {"pass", ok}};
  r.pass = ok == fr.xi_count();
  return r;
}

inline CheckRecord affine_flats(const pi0::DeltaFrame& fr, const std::vector<pi0::Pi0Set>& sets) {
  CheckRecord r{"affine-flats"};
  std::size_t checked = 0, ok = 0, points = 0;
  for (const auto& P : sets)
    for (std::size_t i = 0; i < fr.xi_count(); ++i) {
      const auto x = pi0::xi_star(fr, P, i);
      ++checked;
      ok += x.pass();
      points = x.points.size();
      if (!x.pass() && !r.witnesses.contains("flat")) r.witnesses["flat"] = {{"elements", P.elements}, {"xi", i}, {"detail", x.witness}};
    }
  r.counts = {{"flats", checked}, {"pass", ok}, {"points_per_flat", points}};
  r.pass = ok == checked;
  return r;
}

struct Options {
  unsigned q = 3, n = 2;
  std::uint64_t seed = 0;
  bool full = false;
  std::size_t conic_samples = 1000;
  std::size_t family_pairs = 100;
  std::size_t pair_checks = 100;
  std::size_t gamma_points = 2;
  unsigned workers = 1;
};

inline void describe(RunReport& rep, const Egg& E, const std::optional<Subspace>& phi = std::nullopt) {
  rep.field = io::field_to_json(E.field);
  rep.instances.push_back(egg_descriptor(E));
  if (phi) rep.extra["phi"] = io::subspace_to_json(*phi);
}

/// Every check of the structural argument on O(n,2n,q).
inline RunReport lemmas(const Options& o) {
  RunReport rep;
  const Egg E = standard_egg(o.q, o.n, {o.full, o.seed});
  const pi0::DeltaFrame fr = pi0::delta_frame(E, std::nullopt, o.full);
  describe(rep, E, fr.phi);
  rep.add(conic_uniqueness(E, o.conic_samples, o.seed));
  rep.add(conic_families(E, o.family_pairs));
  rep.add(tangent_meets(E, o.pair_checks));
  rep.add(frame_check(fr, o.full));
  std::vector<pi0::Pi0Set> sets;
  rep.add(pi0_sets(fr, o.gamma_points, &sets));
  if (E.q() != 2) {
    rep.add(alpha_maps(fr));
    rep.add(parallel(fr));
    rep.add(affine_flats(fr, sets));
  }
  return rep;
}

/// Builds T(O), checks regularity of a line over element 0, runs the pipeline and the
/// classification.
inline RunReport classify_egg(const Egg& E, const Options& o) {
  RunReport rep;
  describe(rep, E, pi0::canonical_complement(E.elements[0]));
  const TModel T(E);
  const auto w = pi0::regular_line_witness(T, T.affine_line(0, 0));
  CheckRecord wr{"regular-line-over-element-0"};
  wr.counts = {{"line", w.line}, {"classes", w.report.classes_tested}, {"double_perp", w.report.double_perp_size}};
  wr.pass = w.report.regular;
  rep.add(wr);
  if (!w.report.regular) return rep;
  const auto p = pi0::goodness_via_pipeline(E, w, o.full);
  CheckRecord pr{"goodness-pipeline"};
  pr.counts = p.certificate["counts"];
  pr.counts["good"] = p.good;
  pr.counts["direct_good"] = p.direct_good;
  pr.pass = p.good && p.agree;
  if (!p.findings.empty()) pr.witnesses["findings"] = p.findings;
  rep.add(pr);
  const auto c = pi0::classify(T, w, o.full);
  CheckRecord cr{"classification"};
  cr.counts = {{"label", c.label}, {"evidence", c.evidence}};
  if (c.dual) cr.counts["dual_elements"] = c.dual->size();
  cr.pass = c.pass;
  rep.add(cr);
  return rep;
}

inline RunReport classify(const Options& o) { return classify_egg(standard_egg(o.q, o.n, {o.full, o.seed}), o); }

/// Goodness at every element, spread over workers; results land in index order.
inline CheckRecord goodness_all(const Egg& E, unsigned workers) {
  std::vector<GoodnessReport> reps(E.size());
  parallel_for(E.size(), workers, [&](std::size_t i) { reps[i] = goodness_test(E, int(i)); });
  CheckRecord r{"goodness"};
  std::size_t good = 0, spans = 0;
  for (const auto& g : reps) {
    good += g.good;
    spans += g.distinct_spans;
    if (!g.good && !r.witnesses.contains("triple")) r.witnesses["triple"] = g.counterexample;
  }
  r.counts = {{"elements", E.size()}, {"good", good}, {"spans_examined", spans}};
  r.pass = good == E.size();
  return r;
}

/// End-to-end pass over O(1,2,3).
inline RunReport smoke(const Options& o) {
  RunReport rep;
  const Egg E = standard_egg(3, 1, {true, o.seed});
  describe(rep, E);
  const TModel T(E);
  const auto& S = T.structure();
  GQCheckOptions go;
  go.full = true;
  const GQOrder ord = gq_check(S, go);
  CheckRecord g{"gq-axioms"};
  g.counts = {{"s", ord.s}, {"t", ord.t}, {"v", S.v()}, {"b", S.b()}, {"pairs", ord.pairs_checked}};
  g.pass = ord.s == 3 && ord.t == 9 && S.v() == 112 && S.b() == 280;
  rep.add(g);

  const auto tc = triad_census(S, true);
  CheckRecord t{"triad-centers"};
  t.counts = {{"triads", tc.triads}, {"histogram", tc.center_histogram}};
  t.pass = tc.center_histogram.size() == 1 && tc.center_histogram.begin()->first == std::size_t(ord.s + 1);
  rep.add(t);

  std::size_t regular = 0;
  const auto cor = coregularity(S, T.infinity());
  for (const auto& r : cor) regular += r.regular;
  CheckRecord c{"coregularity"};
  c.counts = {{"lines", cor.size()}, {"regular", regular}};
  c.pass = regular == cor.size();
  rep.add(c);

  const auto tp = translation_point_check(T, T.infinity());
  CheckRecord tr{"translation-point"};
  tr.counts = {{"group_orders", tp.group_orders}, {"method", tp.method}};
  tr.pass = tp.translation_point;
  rep.add(tr);

  rep.add(goodness_all(E, o.workers));

  Options co = o;
  co.q = 3;
  co.n = 1;
  for (auto& ch : classify(co).checks) rep.add(std::move(ch));
  return rep;
}

inline RunReport run(const std::string& name, const Options& o) {
  if (name == "smoke") return smoke(o);
  if (name == "lemmas") return lemmas(o);
  if (name == "classify") return classify(o);
  fail(ErrorCode::Precondition, "unknown suite " + name);
}

}  // namespace suite
}  // namespace tgq
