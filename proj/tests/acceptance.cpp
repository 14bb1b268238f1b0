// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "tgq/flock.hpp"
#include "tgq/suite.hpp"

using namespace tgq;

namespace {

// Pinned limits.
constexpr double kAxiomsSeconds = 60;
constexpr double kGoodnessSeconds = 300;
constexpr double kFlockSeconds = 120;
constexpr std::size_t kConicTuples = 1000;
constexpr std::size_t kFamilyPairs = 100;
constexpr std::size_t kPi0Sets = 10;
constexpr std::size_t kKernelSets = 20;
constexpr std::size_t kOddEtaPairs = 100;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  double limit = 0;  // seconds, 0 for none

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const Error& e) {
    o.pass = false;
    o.note << " [error " << e.what() << "]";
  } catch (const std::exception& e) {
    o.pass = false;
    o.note << " [exception " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (o.limit > 0 && secs >= o.limit) {
    o.pass = false;
    o.note << " [over " << o.limit << "s]";
  }
  failures += !o.pass;
  std::printf("[%02d] %s ... %s  (%.2fs)%s\n", id, name, o.pass ? "PASS" : "FAIL", secs, o.note.str().c_str());
  std::fflush(stdout);
}

const CheckRecord& find(const RunReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return c;
  fail(ErrorCode::Precondition, "missing check " + id);
}

std::size_t lines_through_infinity_regular(unsigned n) {
  const Egg E = standard_egg(3, n, {true, 0});
  const TModel T(E);
  std::size_t regular = 0;
  for (const auto& r : coregularity(T.structure(), T.infinity())) regular += r.regular;
  return regular;
}

}  // namespace

int main() {
  const Egg e13 = standard_egg(3, 1, {true, 0});
  const TModel t13(e13);
  const auto& S13 = t13.structure();

  criterion(1, "gq-axioms", [&](Outcome& o) {
    o.limit = kAxiomsSeconds;
    GQCheckOptions go;
    go.full = true;
    const GQOrder ord = gq_check(S13, go);
    o.require(ord.s == 3 && ord.t == 9, "order");
    o.require(S13.v() == 112 && S13.b() == 280, "v,b");
    o.require(S13.v() == std::size_t((ord.s + 1) * (ord.s * ord.t + 1)), "v formula");
    o.require(ord.mode == "full", "mode");
    o.note << " order (" << ord.s << "," << ord.t << ") v=" << S13.v() << " b=" << S13.b();
  });

  criterion(2, "triad-centers", [&](Outcome& o) {
    const auto c = triad_census(S13, true);
    o.require(c.center_histogram.size() == 1 && c.center_histogram.begin()->first == 4, "centers");
    o.require(c.mode == "full", "mode");
    o.note << " " << c.triads << " triads";
  });

  criterion(3, "coregularity", [&](Outcome& o) {
    const std::size_t a = lines_through_infinity_regular(1), b = lines_through_infinity_regular(2);
    o.require(a == 10, "n=1");
    o.require(b == 82, "n=2");
    o.note << " regular lines through (inf): " << a << "/10, " << b << "/82";
  });

  const Egg e243 = standard_egg(3, 2, {false, 0});

  criterion(4, "goodness-direct", [&](Outcome& o) {
    o.limit = kGoodnessSeconds;
    const CheckRecord r = suite::goodness_all(e243, default_workers());
    o.require(r.pass && r.counts["good"] == 82, "good elements");
    o.note << " " << r.counts["good"].get<std::size_t>() << "/82 good, " << r.counts["spans_examined"] << " spans";
  });

  criterion(5, "lemma-suite", [&](Outcome& o) {
    suite::Options so;
    so.conic_samples = kConicTuples;
    so.family_pairs = kFamilyPairs;
    const RunReport r = suite::lemmas(so);
    for (const auto& c : r.checks) o.require(c.pass, c.id);
    const auto& u = find(r, "conic-uniqueness").counts;
    o.require(u["unique"].get<std::size_t>() >= kConicTuples, "tuples");
    const auto& f = find(r, "conic-families").counts;
    o.require(f["certified"].get<std::size_t>() >= kFamilyPairs && f["planes_per_family"] == 4 &&
                  f["v_sets_of_q_plus_1"] == f["pairs"],
              "families");
    o.require(find(r, "projection-frame").counts["star_spaces_per_regulus"] == 3, "regulus");
    o.require(find(r, "pi0-sets").counts["sets"].get<std::size_t>() >= kPi0Sets, "pi0 sets");
    const auto& a = find(r, "alpha-linearity").counts;
    o.require(a["ordered_pairs"] == 12 && a["linear"] == 12 && a["correspondences_per_pair"] == 81, "alpha");
    o.require(find(r, "affine-flats").counts["points_per_flat"] == 9, "flats");
    o.note << " tuples " << u["unique"] << ", families " << f["certified"] << ", sets " << find(r, "pi0-sets").counts["sets"];
  });

  criterion(6, "pipeline-cross-oracle", [&](Outcome& o) {
    for (const auto& [q, n] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {4, 1}, {5, 1}, {3, 2}}) {
      const Egg E = standard_egg(q, n, {false, 0});
      const TModel T(E);
      const auto w = pi0::regular_line_witness(T, T.affine_line(0, 0));
      const auto p = pi0::goodness_via_pipeline(E, w);
      const std::string tag = "O(" + std::to_string(n) + "," + std::to_string(2 * n) + "," + std::to_string(q) + ")";
      o.require(p.agree && p.good == p.direct_good && p.good, tag);
      o.require(p.sigma_star.size() == ipow(q, n) + 1, tag + " sigma*");
      if (n == 2) {
        const pi0::DeltaFrame fr = pi0::delta_frame(E);
        std::size_t covered = 0;
        for (const auto& s : p.sigma_star) covered += point_count(q, s.rank());
        o.require(covered == points_of(fr.tau_star).size(), "sigma* partition");
        o.note << " sigma* at " << tag << ": " << p.sigma_star.size() << " spaces over " << covered << " points";
      }
    }
  });

  const Egg e124 = standard_egg(4, 1, {true, 0});

  criterion(7, "classify-even", [&](Outcome& o) {
    suite::Options so;
    so.q = 4;
    so.n = 1;
    so.full = true;
    const RunReport r = suite::classify_egg(e124, so);
    for (const auto& c : r.checks) o.require(c.pass, c.id);
    const auto& c = find(r, "classification").counts;
    o.require(c["label"] == "classical (evidence suite)", "label");
    o.require(c["evidence"]["all_lines"]["regular_lines"] == 1105 && c["evidence"]["all_lines"]["lines"] == 1105, "lines");
    o.require(c["evidence"]["good_at_every_element"] == true, "goodness");
    o.require(c["evidence"].contains("out_of_scope"), "scope");
  });

  criterion(8, "even-kernel-point", [&](Outcome& o) {
    const pi0::DeltaFrame fr = pi0::delta_frame(e124);
    const CheckRecord r = suite::pi0_sets(fr, 5);
    o.require(r.pass, "sets");
    o.require(r.counts["kernel_points"].get<std::size_t>() >= kKernelSets && r.counts["kernel_points"] == r.counts["sets"],
              "kernel points");
    o.note << " " << r.counts["kernel_points"] << " sets with a kernel point";
  });

  criterion(9, "tangent-meets", [&](Outcome& o) {
    const CheckRecord odd = suite::tangent_meets(e243, kOddEtaPairs);
    o.require(odd.pass && odd.counts["pairs"] == kOddEtaPairs, "odd");
    const CheckRecord even = suite::tangent_meets(e124, 1000);
    o.require(even.pass && even.counts["pairs"] == 120, "even");
    o.note << " odd " << odd.counts["pass"] << " pairs, even " << even.counts["pass"] << " pairs";
  });

  criterion(10, "translation-point", [&](Outcome& o) {
    const std::size_t s = 3;
    for (std::size_t i = 0; i < e13.size(); ++i) {
      const auto g = t13.line_symmetries(i);
      const Index l = t13.element_line(i);
      bool ok = g.size() == s && is_group(g);
      for (const auto& c : g) ok = ok && is_collineation(S13, c) && fixes_star_of(S13, c, l);
      o.require(ok, "line " + std::to_string(l));
      o.require(symmetry_group_about(S13, l).size() == s, "search " + std::to_string(l));
    }
    o.require(translation_point_check(t13, t13.infinity()).translation_point, "(inf)");
    o.require(symmetry_direction_span(e13).rank() == t13.vector_length(), "directions");
  });

  criterion(11, "flocks", [&](Outcome& o) {
    o.limit = kFlockSeconds;
    for (unsigned q : {3u, 5u, 9u}) {
      const FieldPtr f = field_of_order(q);
      const auto c = semifield_test(flock_validate(f, linear_flock_planes(*f, least_nonsquare(*f))));
      o.require(c.linear && c.semifield, "linear q=" + std::to_string(q));
    }
    const FieldPtr f9 = field_of_order(9);
    const auto kk = semifield_test(flock_validate(f9, kantor_knuth_planes(*f9, 1, least_nonsquare(*f9))));
    o.require(kk.semifield && !kk.linear, "kantor-knuth");
    const FieldPtr f3 = field_of_order(3);
    const QClanGQ Q = qclan_gq(flock_validate(f3, linear_flock_planes(*f3, least_nonsquare(*f3))));
    GQCheckOptions go;
    go.full = true;
    const GQOrder ord = gq_check(Q.structure, go);
    o.require(ord.s == 9 && ord.t == 3 && Q.structure.v() == 280 && Q.structure.b() == 112, "qclan order");
    const auto e = elation_check(Q);
    o.require(e.collineations && e.fixes_infinity_linewise && e.regular && e.opposite_are_group && e.opposite_points == 243,
              "elation");
  });

  criterion(12, "determinism", [&](Outcome& o) {
    suite::Options so;
    const std::string a = suite::lemmas(so).to_json().dump(2), b = suite::lemmas(so).to_json().dump(2);
    o.require(!a.empty() && a == b, "bytes");
    o.note << " " << a.size() << " bytes";
  });

  std::printf("%s: %d failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
