// tgq: command-line driver. Exit 0 when every check passes, 1 on a finding, 2 on a
// usage or input error.

#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "tgq/flock.hpp"
#include "tgq/suite.hpp"

using namespace tgq;
using nlohmann::json;

namespace {

struct Globals {
  bool json_out = false;
  std::string out;
  std::uint64_t seed = 0;
  bool full = false;
  unsigned workers = 1;
};

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse:
    case ErrorCode::NonPrime:
    case ErrorCode::ReduciblePoly:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::LengthMismatch:
    case ErrorCode::FieldMismatch:
    case ErrorCode::Precondition:
    case ErrorCode::Unsupported:
    case ErrorCode::TooLarge:
      return true;
    default:
      return false;
  }
}

CheckRecord record(const std::string& id, bool pass, json counts = json::object()) {
  CheckRecord r{id};
  r.pass = pass;
  r.counts = std::move(counts);
  return r;
}

json rows_json(const Subspace& s) { return s.rows(); }

// ---- egg ----

Egg load_egg(const std::string& path, const Globals& g) { return io::egg_from_json(io::read_file(path), {g.full, g.seed}); }

RunReport egg_validate_cmd(const std::string& path, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(path, g);
  suite::describe(rep, E);
  auto& r = rep.add(record("egg-valid", true, E.validation));
  if (!E.warnings.empty()) r.witnesses["warnings"] = E.warnings;
  return rep;
}

RunReport egg_tangents_cmd(const std::string& path, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(path, g);
  suite::describe(rep, E);
  json t = json::array();
  for (const auto& s : E.tangents) t.push_back(rows_json(s));
  rep.add(record("tangent-spaces", true, {{"tangents", E.tangents.size()}, {"rank", E.tangents[0].rank()}}));
  rep.extra["tangents"] = t;
  return rep;
}

RunReport egg_good_cmd(const std::string& path, int element, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(path, g);
  suite::describe(rep, E);
  if (element >= 0) {
    if (std::size_t(element) >= E.size()) fail(ErrorCode::Precondition, "element out of range");
    const auto gr = goodness_test(E, element);
    auto& r = rep.add(record("goodness", gr.good, {{"element", element}, {"spans", gr.distinct_spans}, {"histogram", gr.span_histogram}}));
    if (!gr.good) r.witnesses["triple"] = gr.counterexample;
  } else {
    rep.add(suite::goodness_all(E, g.workers));
  }
  return rep;
}

RunReport egg_dual_cmd(const std::string& path, const std::string& emit, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(path, g);
  suite::describe(rep, E);
  const Egg D = translation_dual(E, {g.full, g.seed});
  rep.instances.push_back(egg_descriptor(D));
  rep.add(record("translation-dual-valid", true, D.validation));
  if (!emit.empty()) io::write_file(emit, io::egg_to_json(D));
  return rep;
}

RunReport egg_from_ovoid_cmd(unsigned q, unsigned n, const std::string& emit, const Globals& g) {
  RunReport rep;
  const Egg E = standard_egg(q, n, {g.full, g.seed});
  suite::describe(rep, E);
  rep.add(record("egg-valid", true, E.validation));
  if (!emit.empty()) io::write_file(emit, io::egg_to_json(E));
  return rep;
}

// ---- gq on incidence files ----

RunReport gq_check_cmd(const std::string& path, const Globals& g) {
  RunReport rep;
  const auto S = io::incidence_from_json(io::read_file(path));
  rep.instances.push_back({{"kind", "incidence"}, {"v", S.v()}, {"b", S.b()}});
  GQCheckOptions opt;
  opt.full = g.full;
  opt.seed = g.seed;
  const auto o = gq_check(S, opt);
  auto& r = rep.add(record("gq-axioms", true, {{"s", o.s}, {"t", o.t}, {"pairs", o.pairs_checked}}));
  r.mode = o.mode;
  r.seed = o.seed;
  return rep;
}

RunReport gq_perps_cmd(const std::string& path, const std::vector<Index>& pts) {
  RunReport rep;
  const auto S = io::incidence_from_json(io::read_file(path));
  Side side(S, Side::Points);
  for (Index p : pts)
    if (p < 0 || std::size_t(p) >= S.v()) fail(ErrorCode::Precondition, "point out of range");
  const IndexList perp = pts.size() == 1 ? perp_of(side, pts[0]) : perp_set(side, IndexList(pts.begin(), pts.end()));
  rep.add(record("perp", true, {{"points", pts}, {"perp", perp}, {"size", perp.size()}}));
  return rep;
}

RunReport gq_regularity_cmd(const std::string& path, Index point, Index line) {
  RunReport rep;
  const auto S = io::incidence_from_json(io::read_file(path));
  const bool lines = line >= 0;
  Side side(S, lines ? Side::Lines : Side::Points);
  const Index a = lines ? line : point;
  if (a < 0 || std::size_t(a) >= side.count()) fail(ErrorCode::Precondition, "index out of range");
  const auto r = element_regularity(side, a);
  auto& c = rep.add(record("regularity", r.regular, {{"object", r.object}, {"index", a}, {"classes", r.classes_tested}, {"double_perp", r.double_perp_size}}));
  if (!r.regular) c.witnesses["partner"] = r.witness;
  return rep;
}

RunReport gq_triads_cmd(const std::string& path, const Globals& g) {
  RunReport rep;
  const auto S = io::incidence_from_json(io::read_file(path));
  const auto c = triad_census(S, g.full, 100000, g.seed);
  auto& r = rep.add(record("triad-centers", c.center_histogram.size() == 1, {{"triads", c.triads}, {"histogram", c.center_histogram}}));
  r.mode = c.mode;
  r.seed = g.seed;
  return rep;
}

RunReport gq_grid_cmd(const std::string& path, Index l0, Index l1) {
  RunReport rep;
  const auto S = io::incidence_from_json(io::read_file(path));
  if (l0 < 0 || l1 < 0 || std::size_t(std::max(l0, l1)) >= S.b()) fail(ErrorCode::Precondition, "line out of range");
  const Grid gr = grid_of(S, l0, l1);
  rep.add(record("grid", true, {{"points", gr.points}, {"rows", gr.rows}, {"columns", gr.columns}}));
  return rep;
}

RunReport gq_symmetries_cmd(const std::string& path, Index line) {
  RunReport rep;
  const auto S = io::incidence_from_json(io::read_file(path));
  if (line < 0 || std::size_t(line) >= S.b()) fail(ErrorCode::Precondition, "line out of range");
  const auto group = symmetry_group_about(S, line);
  const std::size_t s = S.points_on(0).size() - 1;
  rep.add(record("symmetries", is_group(group), {{"line", line}, {"order", group.size()}, {"axis", group.size() == s}}));
  return rep;
}

// ---- gq on T(O) ----

RunReport gq_build_tq_cmd(const std::string& path, const std::string& emit, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(path, g);
  suite::describe(rep, E);
  const TModel T(E);
  GQCheckOptions opt;
  opt.full = g.full;
  opt.seed = g.seed;
  const auto o = gq_check(T.structure(), opt);
  const bool ok = o.s == int(ipow(E.q(), E.n)) && o.t == int(ipow(E.q(), E.m));
  auto& r = rep.add(record("gq-axioms", ok, {{"s", o.s}, {"t", o.t}, {"v", T.structure().v()}, {"b", T.structure().b()}, {"pairs", o.pairs_checked}}));
  r.mode = o.mode;
  r.seed = o.seed;
  const auto cor = coregularity(T.structure(), T.infinity());
  std::size_t regular = 0;
  for (const auto& x : cor) regular += x.regular;
  rep.add(record("coregularity", regular == cor.size(), {{"lines", cor.size()}, {"regular", regular}}));
  if (!emit.empty()) io::write_file(emit, io::incidence_to_json(T.structure()));
  return rep;
}

RunReport gq_translation_point_cmd(const std::string& path, Index point, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(path, g);
  suite::describe(rep, E);
  const TModel T(E);
  const Index p = point < 0 ? T.infinity() : point;
  if (std::size_t(p) >= T.structure().v()) fail(ErrorCode::Precondition, "point out of range");
  if (p != T.infinity() && T.structure().v() > 500) fail(ErrorCode::TooLarge, "symmetry search is limited to 500 points");
  const auto v = translation_point_check(T, p);
  auto& r = rep.add(record("translation-point", v.translation_point, {{"point", p}, {"group_orders", v.group_orders}, {"method", v.method}}));
  if (!v.translation_point) r.witnesses["line"] = v.witness_line;
  return rep;
}

RunReport gq_axes_cmd(const std::string& path, int element, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(path, g);
  suite::describe(rep, E);
  if (element < 0 || std::size_t(element) >= E.size()) fail(ErrorCode::Precondition, "element out of range");
  const TModel T(E);
  const auto group = T.line_symmetries(std::size_t(element));
  const Index l = T.element_line(std::size_t(element));
  bool ok = group.size() == ipow(E.q(), E.n);
  for (const auto& c : group) ok = ok && is_collineation(T.structure(), c) && fixes_star_of(T.structure(), c, l);
  json counts = {{"element", element}, {"line", l}, {"order", group.size()}};
  if (T.structure().v() <= 500) counts["search_order"] = symmetry_group_about(T.structure(), l).size();
  rep.add(record("axis-of-symmetry", ok, counts));
  return rep;
}

// ---- structural argument ----

struct Sec6Args {
  std::string egg;
  int i = 1, j = 2, k = 0, point = 0, x_star = 0;
  bool random_phi = false;
};

std::optional<Subspace> chosen_phi(const Egg& E, const Sec6Args& a, const Globals& g) {
  if (a.random_phi) return pi0::random_complement(E.elements[0], g.seed);
  return pi0::canonical_complement(E.elements[0]);
}

void check_element(const Egg& E, int e) {
  if (e < 0 || std::size_t(e) >= E.size()) fail(ErrorCode::Precondition, "element " + std::to_string(e) + " out of range");
}

RunReport sec6_cmd(const std::string& what, const Sec6Args& a, const Globals& g) {
  RunReport rep;
  const Egg E = load_egg(a.egg, g);
  const auto phi = chosen_phi(E, a, g);
  suite::describe(rep, E, phi);
  for (int e : {a.i, a.j, a.k}) check_element(E, e);
  if (what == "conic") {
    const auto pts = points_of(E.elements[a.k]);
    if (a.point < 0 || std::size_t(a.point) >= pts.size()) fail(ErrorCode::Precondition, "point out of range");
    const auto c = pi0::pi0_conic_through(E, a.i, a.j, a.k, pts[a.point]);
    rep.add(record("pi0-conic", c.points.size() == E.q() + 1,
                   {{"elements", c.contact}, {"points", c.points}, {"plane", rows_json(c.plane())}}));
    const auto search = suite::conic_planes_by_search(E, a.i, a.j, a.k, pts[a.point]);
    rep.add(record("conic-uniqueness", search.size() == 1 && search[0] == c.plane(), {{"planes", search.size()}}));
  } else if (what == "family") {
    const auto f = pi0::segre_family(E, a.i, a.j);
    auto& r = rep.add(record("conic-family", f.pass, f.certificate["counts"]));
    r.witnesses = f.certificate;
  } else if (what == "eta") {
    const auto c = pi0::eta_configuration(E, a.i, a.j);
    json counts = {{"q_even", c.q_even}, {"eta0_rank", c.eta0.rank()}};
    if (c.q_even)
      counts.update({{"equal", c.equal}, {"nuclei_in_eta0", c.nuclei_in_eta0}});
    else
      counts["common_rank"] = c.common.rank();
    rep.add(record(c.q_even ? "tangent-meets-even" : "tangent-meets-odd", c.pass, counts));
  } else if (what == "pi0set") {
    const pi0::DeltaFrame fr = pi0::delta_frame(E, phi, g.full);
    const auto pts = points_of(fr.tau_star);
    if (a.x_star < 0 || std::size_t(a.x_star) >= pts.size()) fail(ErrorCode::Precondition, "x-star out of range");
    const Subspace gamma0 = span(E.elements[0], Subspace::point(E.field, pts[a.x_star]));
    const auto P = pi0::pi0_set_from(E, gamma0, a.i);
    auto& r = rep.add(record("pi0-set", P.pass, {{"elements", P.elements}, {"size", P.elements.size()}}));
    r.witnesses = P.checks;
    bool part = false;
    const auto parts = pi0::pi0_partition(E, gamma0, &part);
    rep.add(record("pi0-partition", part, {{"sets", parts.size()}}));
  } else if (what == "frame") {
    const pi0::DeltaFrame fr = pi0::delta_frame(E, phi, g.full);
    auto& r = rep.add(suite::frame_check(fr, g.full));
    r.witnesses = fr.checks;
  } else if (what == "alpha") {
    const pi0::DeltaFrame fr = pi0::delta_frame(E, phi, g.full);
    rep.add(suite::alpha_maps(fr));
    rep.add(suite::parallel(fr));
  } else if (what == "goodness") {
    const TModel T(E);
    const auto w = pi0::regular_line_witness(T, T.affine_line(0, 0));
    rep.add(record("regular-line-over-element-0", w.report.regular, {{"line", w.line}, {"double_perp", w.report.double_perp_size}}));
    const auto p = pi0::goodness_via_pipeline(E, w, g.full, phi);
    auto& r = rep.add(record("goodness-pipeline", p.good && p.agree, p.certificate["counts"]));
    r.counts["good"] = p.good;
    r.counts["direct_good"] = p.direct_good;
    if (!p.findings.empty()) r.witnesses["findings"] = p.findings;
    json sig = json::array();
    for (const auto& s : p.sigma_star) sig.push_back(rows_json(s));
    rep.extra["sigma_star"] = sig;
  } else if (what == "classify") {
    suite::Options o;
    o.full = g.full;
    o.seed = g.seed;
    RunReport c = suite::classify_egg(E, o);
    for (auto& ch : c.checks) rep.add(std::move(ch));
  } else {
    fail(ErrorCode::Precondition, "unknown sec6 command " + what);
  }
  return rep;
}

// ---- flocks ----

RunReport flock_report(const FieldPtr& f, const std::vector<FlockPlane>& planes, bool classify, const std::string& emit) {
  RunReport rep;
  rep.field = io::field_to_json(f);
  rep.instances.push_back({{"kind", "flock"}, {"q", f->q()}, {"planes", planes}});
  const Flock fl = flock_validate(f, planes);
  rep.add(record("flock-valid", true, {{"sections", fl.sections.size()}, {"points", f->q() * (f->q() + 1)}}));
  if (classify) {
    const auto c = semifield_test(fl);
    auto& r = rep.add(record("flock-class", true, {{"linear", c.linear}, {"semifield", c.semifield}, {"order", c.order}}));
    if (c.witness) r.witnesses["non_additive_pair"] = *c.witness;
  }
  if (!emit.empty()) io::write_file(emit, io::flock_to_json(f, fl.planes));
  return rep;
}

RunReport flock_gq_build(const std::string& path, const std::string& emit, const Globals& g) {
  const auto [f, planes] = io::flock_from_json(io::read_file(path));
  RunReport rep = flock_report(f, planes, false, "");
  const QClanGQ Q = qclan_gq(flock_validate(f, planes));
  rep.add(record("four-gonal-family", true, {{"subgroups", Q.family.size()}, {"group_order", Q.group_order}}));
  GQCheckOptions opt;
  opt.full = g.full;
  opt.seed = g.seed;
  const auto o = gq_check(Q.structure, opt);
  const auto d = gq_check(Q.structure.dual(), opt);
  const unsigned q = f->q();
  auto& r = rep.add(record("gq-axioms", o.s == int(q * q) && o.t == int(q) && d.s == int(q) && d.t == int(q * q),
                           {{"s", o.s}, {"t", o.t}, {"v", Q.structure.v()}, {"b", Q.structure.b()}, {"dual", {d.s, d.t}}}));
  r.mode = o.mode;
  const auto e = elation_check(Q);
  rep.add(record("elation-group", e.collineations && e.fixes_infinity_linewise && e.regular && e.opposite_are_group,
                 {{"opposite_points", e.opposite_points}, {"collineations", e.collineations},
                  {"fixes_infinity_linewise", e.fixes_infinity_linewise}, {"regular", e.regular}}));
  if (!emit.empty()) io::write_file(emit, io::incidence_to_json(Q.structure));
  return rep;
}

void emit(const RunReport& rep, const Globals& g) {
  const json j = rep.to_json();
  if (!g.out.empty()) io::write_file(g.out, j);
  if (g.json_out) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  for (const auto& c : rep.checks) std::cout << c.id << " ... " << (c.pass ? "PASS" : "FAIL") << ' ' << c.counts.dump() << '\n';
  std::cout << (rep.pass() ? "PASS" : "FAIL") << '\n';
}

void emit_finding(const Error& e, const std::vector<std::string>& command, const Globals& g) {
  RunReport rep;
  rep.command = command;
  CheckRecord r{"run"};
  r.pass = false;
  r.witnesses = {{"error", to_string(e.code())}, {"message", e.what()}, {"witness", e.witness()}};
  rep.add(r);
  emit(rep, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translation generalized quadrangles: eggs, T(O), the structural goodness argument and flocks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json_out, "Print the JSON report");
  app.add_option("--out", g.out, "Write the JSON report to a file");
  app.add_option("--seed", g.seed, "Sampling seed")->capture_default_str();
  app.add_flag("--full", g.full, "Exhaustive checks instead of sampling");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();

  std::function<RunReport()> action;
  std::string egg_path, inc_path, flock_path, emit_path;
  int element = -1;
  unsigned q = 3, n = 1, sigma = 1;
  Elem m = 0;
  Index point = -1, line = -1;
  std::vector<Index> points, lines;

  auto* egg = app.add_subcommand("egg", "Egg validation and derived eggs");
  egg->require_subcommand(1);
  auto* ev = egg->add_subcommand("validate", "Validate an egg file");
  ev->add_option("--egg", egg_path)->required();
  ev->callback([&] { action = [&] { return egg_validate_cmd(egg_path, g); }; });
  auto* et = egg->add_subcommand("tangents", "Tangent spaces");
  et->add_option("--egg", egg_path)->required();
  et->callback([&] { action = [&] { return egg_tangents_cmd(egg_path, g); }; });
  auto* eg = egg->add_subcommand("good", "Goodness at one or every element");
  eg->add_option("--egg", egg_path)->required();
  eg->add_option("--element", element);
  eg->callback([&] { action = [&] { return egg_good_cmd(egg_path, element, g); }; });
  auto* ed = egg->add_subcommand("dual", "Translation dual");
  ed->add_option("--egg", egg_path)->required();
  ed->add_option("--emit", emit_path);
  ed->callback([&] { action = [&] { return egg_dual_cmd(egg_path, emit_path, g); }; });
  auto* eo = egg->add_subcommand("from-ovoid", "O(n,2n,q) from the elliptic quadric of PG(3,q^n)");
  eo->add_option("--q", q)->required();
  eo->add_option("--n", n)->capture_default_str();
  eo->add_option("--emit", emit_path);
  eo->callback([&] { action = [&] { return egg_from_ovoid_cmd(q, n, emit_path, g); }; });

  auto* gq = app.add_subcommand("gq", "Generalized quadrangle checks");
  gq->require_subcommand(1);
  auto* gc = gq->add_subcommand("check", "Axioms and order");
  gc->add_option("--incidence", inc_path)->required();
  gc->callback([&] { action = [&] { return gq_check_cmd(inc_path, g); }; });
  auto* gp = gq->add_subcommand("perps", "Perp of one or more points");
  gp->add_option("--incidence", inc_path)->required();
  gp->add_option("--point", points)->required();
  gp->callback([&] { action = [&] { return gq_perps_cmd(inc_path, points); }; });
  auto* gr = gq->add_subcommand("regularity", "Regularity of a point or a line");
  gr->add_option("--incidence", inc_path)->required();
  auto* gr_point = gr->add_option("--point", point);
  gr->add_option("--line", line)->excludes(gr_point);
  gr->callback([&] { action = [&] { return gq_regularity_cmd(inc_path, point, line); }; });
  auto* gt = gq->add_subcommand("triads", "Triad center census");
  gt->add_option("--incidence", inc_path)->required();
  gt->callback([&] { action = [&] { return gq_triads_cmd(inc_path, g); }; });
  auto* gg = gq->add_subcommand("grid", "Grid of a regular pair of lines");
  gg->add_option("--incidence", inc_path)->required();
  gg->add_option("--line", lines)->required()->expected(2);
  gg->callback([&] { action = [&] { return gq_grid_cmd(inc_path, lines[0], lines[1]); }; });
  auto* gs = gq->add_subcommand("symmetries", "Symmetry group about a line");
  gs->add_option("--incidence", inc_path)->required();
  gs->add_option("--line", line)->required();
  gs->callback([&] { action = [&] { return gq_symmetries_cmd(inc_path, line); }; });
  auto* gb = gq->add_subcommand("build-tq", "Build T(O) from an egg");
  gb->add_option("--egg", egg_path)->required();
  gb->add_option("--emit", emit_path);
  gb->callback([&] { action = [&] { return gq_build_tq_cmd(egg_path, emit_path, g); }; });
  auto* gtp = gq->add_subcommand("translation-point", "Translation point check (default (inf))");
  gtp->add_option("--egg", egg_path)->required();
  gtp->add_option("--point", point);
  gtp->callback([&] { action = [&] { return gq_translation_point_cmd(egg_path, point, g); }; });
  auto* ga = gq->add_subcommand("axes", "Symmetries about the line of an element");
  ga->add_option("--egg", egg_path)->required();
  ga->add_option("--element", element)->required();
  ga->callback([&] { action = [&] { return gq_axes_cmd(egg_path, element, g); }; });

  auto* sec6 = app.add_subcommand("sec6", "The structural goodness argument on an egg with element 0 fixed");
  sec6->require_subcommand(1);
  Sec6Args sa;
  for (const char* name : {"conic", "family", "eta", "pi0set", "frame", "alpha", "goodness", "classify"}) {
    auto* c = sec6->add_subcommand(name);
    c->add_option("--egg", sa.egg)->required();
    c->add_option("--i", sa.i)->capture_default_str();
    c->add_option("--j", sa.j)->capture_default_str();
    c->add_option("--k", sa.k)->capture_default_str();
    c->add_option("--point", sa.point, "Index of the point of element k")->capture_default_str();
    c->add_option("--x-star", sa.x_star, "Index of the point of tau* fixing gamma_0")->capture_default_str();
    c->add_flag("--random-phi", sa.random_phi, "Seeded random complement instead of the canonical one");
    const std::string what = name;
    c->callback([&, what] { action = [&, what] { return sec6_cmd(what, sa, g); }; });
  }

  auto* fl = app.add_subcommand("flock", "Flocks of the quadratic cone");
  fl->require_subcommand(1);
  auto* fv = fl->add_subcommand("validate", "Validate a flock file");
  fv->add_option("--flock", flock_path)->required();
  fv->callback([&] {
    action = [&] {
      const auto [f, planes] = io::flock_from_json(io::read_file(flock_path));
      return flock_report(f, planes, false, "");
    };
  });
  auto* fc = fl->add_subcommand("classify", "Linear and semifield tests");
  fc->add_option("--flock", flock_path)->required();
  fc->callback([&] {
    action = [&] {
      const auto [f, planes] = io::flock_from_json(io::read_file(flock_path));
      return flock_report(f, planes, true, "");
    };
  });
  auto* fk = fl->add_subcommand("kk", "Planes [t, 0, -m t^sigma, 1] with sigma = x -> x^(p^E)");
  fk->add_option("--q", q)->required();
  fk->add_option("--sigma", sigma, "Frobenius exponent E")->capture_default_str();
  fk->add_option("--m", m, "Field code of m")->required();
  fk->add_option("--emit", emit_path);
  fk->callback([&] {
    action = [&] {
      const FieldPtr f = field_of_order(q);
      if (m == 0 || m >= f->q()) fail(ErrorCode::Precondition, "m must be a nonzero field code");
      return flock_report(f, kantor_knuth_planes(*f, sigma, m), true, emit_path);
    };
  });
  auto* fg = fl->add_subcommand("gq-build", "The q-clan GQ of a flock");
  fg->add_option("--flock", flock_path)->required();
  fg->add_option("--emit", emit_path);
  fg->callback([&] { action = [&] { return flock_gq_build(flock_path, emit_path, g); }; });

  auto* su = app.add_subcommand("suite", "Fixed check lists");
  su->require_subcommand(1);
  suite::Options so;
  for (const char* name : {"smoke", "lemmas", "classify"}) {
    auto* c = su->add_subcommand(name);
    c->add_option("--q", so.q)->capture_default_str();
    c->add_option("--n", so.n)->capture_default_str();
    const std::string what = name;
    c->callback([&, what] {
      action = [&, what] {
        so.seed = g.seed;
        so.full = g.full;
        so.workers = g.workers;
        RunReport r = suite::run(what, so);
        r.extra["suite"] = what;
        return r;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // The output path is not an input, so it stays out of the report.
  std::vector<std::string> command;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--out") ++a;
    else if (arg.rfind("--out=", 0) != 0) command.push_back(arg);
  }
  try {
    RunReport rep = action();
    rep.command = command;
    emit(rep, g);
    return rep.pass() ? 0 : 1;
  } catch (const Error& e) {
    if (is_input_error(e.code())) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    emit_finding(e, command, g);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
