#pragma once

#include "tgq/pi0/segre.hpp"

namespace tgq::pi0 {

/// q^n+1 elements with n-spaces gamma_i containing them, pairwise meeting in one point.
struct Pi0Set {
  std::vector<int> elements;     // elements[0] = 0, elements[1] = k, the rest ascending
  std::vector<Subspace> gammas;  // aligned with elements
  Subspace kernel;               // common point of all gammas (q even), else empty
  nlohmann::json checks;
  bool pass = true;
};

/// Checks that gamma is an n-space with pi_0 inside gamma inside tau_0.
inline void check_gamma0(const Egg& E, const Subspace& gamma0) {
  if (gamma0.rank() != E.n + 1) fail(ErrorCode::BadDimension, "gamma_0 must be an n-space", {{"rank", gamma0.rank()}});
  if (!gamma0.contains(E.elements[0]) || !E.tangents[0].contains(gamma0))
    fail(ErrorCode::GammaNotInTau0, "gamma_0 must contain pi_0 and lie in tau_0");
}

/// The set determined by gamma_0 and element k: element 0, k, and the elements meeting
/// <gamma_0, pi_k> off pi_0 and pi_k. Then gamma_j = <pi_j, tau_j meet gamma_0>.
inline Pi0Set pi0_set_from(const Egg& E, const Subspace& gamma0, int k) {
  check_gamma0(E, gamma0);
  if (k <= 0 || k >= static_cast<int>(E.size())) fail(ErrorCode::Precondition, "k must be an element other than 0");
  const std::size_t target = ipow(E.q(), E.n) + 1;
  Pi0Set P;
  auto check = [&](const std::string& name, bool ok, nlohmann::json w = nullptr) {
    if (!P.checks.contains(name) || P.checks[name] == true) P.checks[name] = ok;
    if (!ok) {
      P.pass = false;
      if (!w.is_null() && !P.checks.contains(name + "_witness")) P.checks[name + "_witness"] = std::move(w);
    }
  };

  const Subspace W = span(gamma0, E.elements[k]);
  std::map<int, int> hits;
  for (auto idx : E.points().indices_of(W)) {
    const int o = E.owner(idx);
    if (o > 0 && o != k) ++hits[o];
  }
  P.elements = {0, k};
  bool single = true;
  for (const auto& [e, c] : hits) {
    P.elements.push_back(e);
    if (c != 1) single = false;
  }
  check("size", P.elements.size() == target, {{"size", P.elements.size()}});
  check("one_point_per_element", single);

  P.gammas.push_back(gamma0);
  for (std::size_t a = 1; a < P.elements.size(); ++a) {
    const int e = P.elements[a];
    const Vec x = single_point(meet(E.tangents[e], gamma0));
    if (x.empty()) {
      check("tau_meets_gamma0_in_point", false, {{"element", e}});
      P.gammas.push_back(E.elements[e]);
      continue;
    }
    P.gammas.push_back(span(E.elements[e], Subspace::point(E.field, x)));
  }

  // Pairwise single-point meets.
  const std::size_t N = P.elements.size();
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b)
      if (meet(P.gammas[a], P.gammas[b]).rank() != 1)
        check("gammas_meet_in_points", false, {{"pair", {P.elements[a], P.elements[b]}}});
  check("gammas_meet_in_points", true);

  // gamma_a meets <pi_b, pi_c> in one point for triples through element 0.
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = b + 1; c < N; ++c) {
        if (a == b || a == c || (a != 0 && b != 0)) continue;
        if (meet(P.gammas[a], span(E.elements[P.elements[b]], E.elements[P.elements[c]])).rank() != 1)
          check("gamma_meets_pair_span_in_point", false, {{"triple", {P.elements[a], P.elements[b], P.elements[c]}}});
      }
  check("gamma_meets_pair_span_in_point", true);

  if (E.field->p() == 2) {
    Subspace common = P.gammas[0];
    for (const auto& g : P.gammas) common = meet(common, g);
    P.kernel = common;
    bool kernel_ok = common.rank() == 1;
    if (kernel_ok) {
      std::vector<int> through;
      for (std::size_t e = 0; e < E.size(); ++e)
        if (E.tangents[e].contains(common)) through.push_back(static_cast<int>(e));
      std::vector<int> sorted = P.elements;
      std::sort(sorted.begin(), sorted.end());
      kernel_ok = through == sorted;
    }
    check("kernel", kernel_ok);
  }
  return P;
}

/// Sets from gamma_0 and successive uncovered elements; they should partition the
/// elements other than 0.
inline std::vector<Pi0Set> pi0_partition(const Egg& E, const Subspace& gamma0, bool* partition_ok = nullptr) {
  std::vector<int> cover(E.size(), 0);
  std::vector<Pi0Set> out;
  for (int k = 1; k < static_cast<int>(E.size()); ++k) {
    if (cover[k]) continue;
    out.push_back(pi0_set_from(E, gamma0, k));
    for (std::size_t a = 1; a < out.back().elements.size(); ++a) ++cover[out.back().elements[a]];
  }
  if (partition_ok) *partition_ok = std::all_of(cover.begin() + 1, cover.end(), [](int c) { return c == 1; });
  return out;
}

}  // namespace tgq::pi0
