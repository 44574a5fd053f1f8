// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <tuple>

#include "dwork_forge/errors.hpp"
#include "dwork_forge/hypergeometric.hpp"
#include "dwork_forge/ordinarity.hpp"
#include "dwork_forge/parallel.hpp"
#include "dwork_forge/unitary.hpp"

namespace dwf {

namespace {

struct HGConfig {
  int N;
  std::vector<int> R;
  uint32_t q;
};

const std::vector<HGConfig>& hg_configs() {
  static const std::vector<HGConfig> c = {{3, {1, 2}, 7},  {3, {1, 2}, 13},    {5, {1, 4}, 11},
                                          {5, {2, 3}, 31}, {11, {1, 2, 8}, 23}};
  return c;
}

std::string cfg_name(const HGConfig& c) {
  return "N" + std::to_string(c.N) + "_q" + std::to_string(c.q);
}

std::vector<int64_t> interior_points(const Field& k) {
  std::vector<int64_t> xs;
  for (int64_t t = 1; t + 1 < static_cast<int64_t>(k->q()); ++t) xs.push_back(t);
  return xs;
}

std::vector<CharPolyRecord> config_records(const HGConfig& c) {
  HGParams P = make_hg_params(c.N, c.R);
  Field k = field_make(c.q, 1);
  FieldTower tower(k, static_cast<uint32_t>(P.n));
  return char_poly_batch(P, tower, interior_points(k));
}

CriterionResult c1_traces() {
  CriterionResult r{1, "trace oracle equivalence", true, json::object(), 0};
  for (const auto& c : hg_configs()) {
    HGParams P = make_hg_params(c.N, c.R);
    Field k = field_make(c.q, 1);
    auto fast = trace_all_fast(P, k);
    auto xs = interior_points(k);
    auto naive = parallel_map(xs.size(), [&](size_t i) { return trace_naive(P, k->from_dlog(xs[i])); });
    int bad = 0;
    for (size_t i = 0; i < xs.size(); ++i)
      if (fast.at(xs[i]) != naive[i]) ++bad;
    r.details[cfg_name(c)] = {{"points", xs.size()}, {"mismatches", bad}};
    if (bad) r.pass = false;
  }
  return r;
}

CriterionResult c2_det() {
  CriterionResult r{2, "determinant", true, json::object(), 0};
  r.details["det_sign"] = kDetSign;
  for (const auto& c : hg_configs()) {
    int abs_bad = 0, signed_bad = 0, signed_checked = 0;
    for (const auto& rec : config_records(c)) {
      DetReport d = verify_det(rec, kDetRelTol);
      if (!d.abs_pass) ++abs_bad;
      if (d.signed_applicable) {
        ++signed_checked;
        if (!d.signed_pass) ++signed_bad;
      }
    }
    r.details[cfg_name(c)] = {{"abs_failures", abs_bad},
                              {"signed_checked", signed_checked},
                              {"signed_failures", signed_bad}};
    if (abs_bad || signed_bad) r.pass = false;
  }
  return r;
}

CriterionResult c3_purity() {
  CriterionResult r{3, "purity", true, json::object(), 0};
  for (const auto& c : hg_configs()) {
    int bad = 0, roots = 0;
    for (const auto& rec : config_records(c)) {
      PurityReport pr = verify_purity(rec, kPurityRelTol);
      roots += static_cast<int>(pr.roots.size());
      if (!pr.pass) ++bad;
    }
    r.details[cfg_name(c)] = {{"failures", bad}, {"roots", roots}};
    if (bad) r.pass = false;
  }
  return r;
}

struct OrdConfig {
  int N;
  std::vector<int> R;
  uint32_t l;
};

const std::vector<OrdConfig>& ord_configs() {
  static const std::vector<OrdConfig> c = {{3, {1, 2}, 7}, {11, {1, 2, 8}, 23}};
  return c;
}

CriterionResult c4_norm_identity() {
  CriterionResult r{4, "norm identity", true, json::object(), 0};
  for (const auto& c : ord_configs()) {
    OrdinaryTest T = make_ordinary_test(make_hg_params(c.N, c.R), c.l);
    for (uint32_t d = 1; d <= 2; ++d) {
      Field k = ordinary_field(T, d);
      NormIdentityReport rep = verify_norm_identity(T, k, d == 1);
      r.details["N" + std::to_string(c.N) + "_l" + std::to_string(c.l) + "_d" + std::to_string(d)] =
          {{"points", rep.rows.size()}, {"failures", rep.failures}};
      if (rep.failures) r.pass = false;
    }
  }
  return r;
}

CriterionResult c5_unit_root() {
  CriterionResult r{5, "unit-root implication", true, json::object(), 0};
  for (const auto& c : ord_configs()) {
    HGParams P = make_hg_params(c.N, c.R);
    OrdinaryTest T = make_ordinary_test(P, c.l);
    for (uint32_t d = 1; d <= 2; ++d) {
      Field k = ordinary_field(T, d);
      FieldTower tower(k, static_cast<uint32_t>(P.n));
      auto recs = char_poly_batch(P, tower, interior_points(k));
      int applicable = 0, hard_fail = 0, full = 0;
      for (auto& rec : recs) {
        rec.slopes = newton_polygon(rec, T.lambda);
        UnitRootReport u = unit_root_check(T, rec, eval_u(T, k->from_dlog(rec.x_dlog)));
        if (!u.applicable) continue;
        ++applicable;
        if (!u.pass) ++hard_fail;
        if (u.fully_ordinary) ++full;
      }
      r.details["N" + std::to_string(c.N) + "_l" + std::to_string(c.l) + "_d" + std::to_string(d)] =
          {{"points", recs.size()},
           {"u_nonvanishing", applicable},
           {"min_slope_failures", hard_fail},
           {"advisory_fully_ordinary", full}};
      if (hard_fail) r.pass = false;
    }
  }
  return r;
}

CriterionResult c6_lucas(const SelftestOptions& opt) {
  CriterionResult r{6, "Lucas congruence", true, json::object(), 0};
  std::mt19937_64 rng(opt.seed ^ 0x6c75636173ULL);
  for (uint32_t l : {5u, 7u, 11u}) {
    int failures = 0;
    bool ok = lucas_check(l, 3, opt.lucas_samples, rng, &failures);
    r.details["l" + std::to_string(l)] = {{"samples", opt.lucas_samples}, {"failures", failures}};
    if (!ok) r.pass = false;
  }
  return r;
}

// Calls fn(frame, s, t) for every tuple with p in {3,5}, e <= 3, f <= 2 and
// entries in [0, e(p-2)].
template <class Fn>
void slope_sweep(Fn fn) {
  for (uint32_t p : {3u, 5u})
    for (uint32_t f = 1; f <= 2; ++f)
      for (int64_t e = 1; e <= 3; ++e) {
        BreuilFrame fr = make_frame(p, f, e);
        const int64_t H = e * (static_cast<int64_t>(p) - 2);
        std::vector<int64_t> v(2 * f, 0);
        for (;;) {
          std::vector<int64_t> s(v.begin(), v.begin() + f), t(v.begin() + f, v.end());
          fn(fr, s, t);
          size_t i = 0;
          while (i < v.size() && ++v[i] > H) v[i++] = 0;
          if (i == v.size()) break;
        }
      }
}

CriterionResult c7_slopes() {
  CriterionResult r{7, "Breuil slope invariants", true, json::object(), 0};
  int64_t tuples = 0, failures = 0;
  slope_sweep([&](const BreuilFrame& fr, const std::vector<int64_t>& s, const std::vector<int64_t>& t) {
    ++tuples;
    SlopeData sd = slope_data(s, t, fr.e, fr.p, fr.f);
    if (!slope_invariants_hold(s, t, fr.e, fr.p, sd)) ++failures;
  });
  r.details = {{"tuples", tuples}, {"failures", failures}};
  r.pass = failures == 0;
  return r;
}

CriterionResult c8_witness() {
  CriterionResult r{8, "genericity witness", true, json::object(), 0};
  int64_t negative = 0, missing = 0, bad_shape = 0, plus_two = 0;
  slope_sweep([&](const BreuilFrame& fr, const std::vector<int64_t>& s, const std::vector<int64_t>& t) {
    int64_t sigma = 0;
    for (uint32_t j = 0; j < fr.f; ++j) sigma += s[j] - t[j] - fr.e;
    if (sigma >= 0) return;
    ++negative;
    auto w = genericity_obstruction(s, t, fr);
    if (!w) {
      ++missing;
      return;
    }
    if (w->plus_two) ++plus_two;
    int64_t p = fr.p;
    bool congruent = (((w->x - t[w->i]) % p) + p) % p == 0;
    if (congruent || w->x > s[w->i] - fr.e) ++bad_shape;
  });
  r.details = {{"negative_tuples", negative},
               {"missing_witness", missing},
               {"witness_shape_failures", bad_shape},
               {"plus_two_branch", plus_two}};
  r.pass = missing == 0 && bad_shape == 0;
  return r;
}

}  // namespace

GenericFrameSummary generic_frame(const BreuilFrame& fr, const std::vector<int64_t>& s,
                                  const std::vector<int64_t>& t, int64_t max_vectors) {
  const FieldDesc& F = *fr.F;
  GenericFrameSummary g;
  RankOneBK top = make_rank_one(fr, s, F.one());
  RankOneBK bottom = make_rank_one(fr, t, F.one());
  ExtProblem pb = make_ext_problem(top, bottom);
  AllowedDegrees ad = bk_extension_degrees(s, t, fr, pb.hom);
  auto allowed = degrees_with_special(ad, pb.hom ? 0 : -1);
  auto forbidden = breuil_forbidden_degrees(pb, allowed);
  std::vector<std::vector<int64_t>> support(fr.f);
  for (uint32_t j = 0; j < fr.f; ++j)
    for (int64_t l : allowed[j])
      if (std::find(forbidden[j].begin(), forbidden[j].end(), l) == forbidden[j].end())
        support[j].push_back(l);

  json rep;
  rep["p"] = fr.p;
  rep["e"] = fr.e;
  rep["f"] = fr.f;
  rep["s"] = s;
  rep["t"] = t;
  rep["n"] = to_json(pb.slopes.n);
  rep["r"] = pb.slopes.r;
  rep["hom"] = pb.hom;
  rep["forbidden"] = forbidden;

  int64_t sigma = 0;
  for (uint32_t j = 0; j < fr.f; ++j) sigma += s[j] - t[j] - fr.e;
  rep["obstruction"] = nullptr;
  json solver = json::object();
  if (sigma < 0) {
    auto w = genericity_obstruction(s, t, fr);
    if (w) {
      g.witness_found = true;
      rep["obstruction"] = {{"i", w->i}, {"x", w->x}, {"plus_two", w->plus_two}};
      ExtCoeffs yw(fr.f);
      yw[w->i][w->x] = F.one();
      g.witness_infeasible = !change_of_variables_solver(pb, yw, support).feasible;
      solver["witness"] = g.witness_infeasible ? "infeasible" : "feasible";
    }
  }

  ImageWindows win = etale_image_windows(s, t, fr, pb.hom);
  auto try_class = [&](size_t j, int64_t deg) {
    ExtCoeffs y(fr.f);
    y[j][deg] = F.one();
    ++g.window_classes;
    if (change_of_variables_solver(pb, y, support).feasible) ++g.window_feasible;
  };
  for (uint32_t j = 0; j < fr.f; ++j)
    for (int64_t deg = win.ranges[j].first; deg <= win.ranges[j].second; ++deg) try_class(j, deg);
  if (win.special) try_class(static_cast<size_t>(win.special->first), win.special->second);
  solver["in_window"] = g.window_feasible == g.window_classes ? "feasible" : "infeasible";
  solver["in_window_feasible"] = {g.window_feasible, g.window_classes};

  // classes built from a Breuil-side y and a fixed change of variables
  ExtCoeffs lam(fr.f);
  for (uint32_t j = 0; j < fr.f; ++j)
    for (int64_t k = -1; k <= 1; ++k) lam[j][k] = F.one();
  for (uint32_t j = 0; j < fr.f; ++j)
    for (int64_t l : support[j]) {
      ExtCoeffs y(fr.f);
      y[j][l] = F.one();
      ++g.roundtrip_classes;
      if (change_of_variables_solver(pb, apply_change_of_variables(pb, y, lam), support).feasible)
        ++g.roundtrip_feasible;
    }
  solver["roundtrip_feasible"] = {g.roundtrip_feasible, g.roundtrip_classes};
  rep["solver"] = solver;

  std::vector<std::pair<size_t, int64_t>> slots;
  for (uint32_t j = 0; j < fr.f; ++j)
    for (int64_t l : allowed[j]) slots.emplace_back(j, l);
  int64_t total = 1;
  bool exhaustive = true;
  for (size_t i = 0; i < slots.size() && exhaustive; ++i) {
    total *= static_cast<int64_t>(F.q());
    if (total > max_vectors) exhaustive = false;
  }
  auto check = [&](const ExtCoeffs& y) {
    ++g.monodromy_vectors;
    bool m = solve_monodromy(pb, y, F.one()).feasible;
    if (m != forbidden_predicate(y, forbidden)) ++g.monodromy_mismatches;
  };
  if (exhaustive) {
    std::vector<uint32_t> digits(slots.size(), 0);
    for (;;) {
      ExtCoeffs y(fr.f);
      for (size_t i = 0; i < slots.size(); ++i)
        if (digits[i]) y[slots[i].first][slots[i].second] = F.from_code(digits[i]);
      check(y);
      size_t i = 0;
      while (i < digits.size() && ++digits[i] == F.q()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  } else {
    for (const auto& [j, l] : slots) {
      ExtCoeffs y(fr.f);
      y[j][l] = F.one();
      check(y);
    }
  }
  rep["monodromy"] = {{"vectors", g.monodromy_vectors},
                      {"exhaustive", exhaustive},
                      {"mismatches", g.monodromy_mismatches}};
  g.report = std::move(rep);
  return g;
}

namespace {

CriterionResult c9_nonsurjectivity() {
  CriterionResult r{9, "non-surjectivity oracle", true, json::object(), 0};
  const uint32_t p = 5, f = 1;
  int64_t frames = 0, witness_bad = 0, win_total = 0, win_feasible = 0, rt_total = 0,
          rt_feasible = 0, mono_vectors = 0, mono_bad = 0;
  for (int64_t e = 1; e <= 2; ++e) {
    BreuilFrame fr = make_frame(p, f, e);
    const int64_t H = e * (p - 2);
    std::vector<std::pair<int64_t, int64_t>> pairs;
    for (int64_t s = 0; s <= H; ++s)
      for (int64_t t = 0; t <= H; ++t)
        if (s - t - e < 0) pairs.emplace_back(s, t);
    auto sums = parallel_map(pairs.size(), [&](size_t i) {
      return generic_frame(fr, {pairs[i].first}, {pairs[i].second});
    });
    for (const auto& g : sums) {
      ++frames;
      if (!g.witness_found || !g.witness_infeasible) ++witness_bad;
      win_total += g.window_classes;
      win_feasible += g.window_feasible;
      rt_total += g.roundtrip_classes;
      rt_feasible += g.roundtrip_feasible;
      mono_vectors += g.monodromy_vectors;
      mono_bad += g.monodromy_mismatches;
    }
  }
  r.details = {{"frames", frames},
               {"witness_not_infeasible", witness_bad},
               {"window_classes", win_total},
               {"window_classes_feasible", win_feasible},
               {"roundtrip_classes", rt_total},
               {"roundtrip_feasible", rt_feasible},
               {"monodromy_vectors", mono_vectors},
               {"monodromy_mismatches", mono_bad}};
  r.pass = witness_bad == 0 && win_feasible == win_total && rt_feasible == rt_total && mono_bad == 0;
  return r;
}

CriterionResult c10_chains() {
  CriterionResult r{10, "chain-slope forcing", true, json::object(), 0};
  for (int d = 1; d <= 4; ++d)
    for (int64_t e = 1; e <= 2; ++e)
      for (uint32_t f = 1; f <= 2; ++f) {
        ChainSweep cs = chain_sweep(d, e, f);
        r.details["d" + std::to_string(d) + "_e" + std::to_string(e) + "_f" + std::to_string(f)] =
            {{"chains", cs.chains}, {"failures", cs.failures}};
        if (cs.failures) r.pass = false;
      }
  return r;
}

CriterionResult c11_unitary(const SelftestOptions& opt) {
  CriterionResult r{11, "unitary suite", true, json::object(), 0};
  std::mt19937_64 rng(opt.seed ^ 0x756e6974ULL);
  json forms = json::object();
  for (uint32_t q : {3u, 5u, 7u}) {
    UnitaryContext ctx = make_unitary(q);
    for (size_t n : {2u, 3u, 4u}) {
      int bad = 0;
      for (int i = 0; i < opt.unitary_forms; ++i) {
        HermitianSpace sp = make_hermitian_space(ctx, random_hermitian(ctx, n, rng));
        FFMatrix C = diagonalize_to_identity(ctx, sp);
        const FieldDesc& F = *ctx.F;
        if (ff_mul(F, ff_mul(F, adjoint(ctx, C), sp.gram), C) != ff_identity(F, n)) ++bad;
      }
      forms["q" + std::to_string(q) + "_n" + std::to_string(n)] = {{"forms", opt.unitary_forms},
                                                                   {"failures", bad}};
      if (bad) r.pass = false;
    }
  }
  r.details["hermitian"] = forms;
  json sym = json::object();
  for (auto [p, m, n] : {std::tuple{7u, 2, 1}, std::tuple{11u, 3, 2}, std::tuple{13u, 2, 3}}) {
    UnitaryContext ctx = make_unitary(p);
    SymPowerEmbed s = sym_power_embed(ctx, n, m);
    sym["p" + std::to_string(p) + "_m" + std::to_string(m) + "_n" + std::to_string(n)] =
        {{"beta", s.beta}, {"alpha", s.alpha}, {"in_su", s.in_su}, {"spectrum_ok", s.spectrum_ok}};
    if (!s.in_su || !s.spectrum_ok) r.pass = false;
  }
  r.details["sym_power"] = sym;
  json ind = json::object();
  for (uint32_t m : {2u, 3u}) {
    // base field containing mu_m: F_7 for both
    Field base = field_make(7, 1);
    int bad = 0, cases = 0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<FFElem> psi;
      for (uint32_t i = 0; i < m; ++i) psi.push_back(base->from_dlog(static_cast<int64_t>(rng() % 6)));
      ++cases;
      if (!induced_spectrum(base, psi).ratio_ok) ++bad;
    }
    ind["m" + std::to_string(m)] = {{"cases", cases}, {"failures", bad}};
    if (bad) r.pass = false;
  }
  r.details["induced"] = ind;
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SelftestOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = c1_traces(); break;
    case 2: r = c2_det(); break;
    case 3: r = c3_purity(); break;
    case 4: r = c4_norm_identity(); break;
    case 5: r = c5_unit_root(); break;
    case 6: r = c6_lucas(opt); break;
    case 7: r = c7_slopes(); break;
    case 8: r = c8_witness(); break;
    case 9: r = c9_nonsurjectivity(); break;
    case 10: r = c10_chains(); break;
    case 11: r = c11_unitary(opt); break;
    default: throw Error(ErrorKind::ConfigInvalid, "no criterion " + std::to_string(id));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (id == 1 && r.seconds >= kTraceBudgetSeconds) r.pass = false;
  if (id == 7 && r.seconds >= kSlopeSweepBudgetSeconds) r.pass = false;
  return r;
}

std::vector<CriterionResult> run_selftest(const SelftestOptions& opt, std::vector<int> ids) {
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, opt));
  return out;
}

json selftest_report(const std::vector<CriterionResult>& results, const SelftestOptions& opt) {
  json crit = json::array();
  bool all = true;
  for (const auto& r : results) {
    crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
    all = all && r.pass;
  }
  return make_report("selftest", {{"seed", opt.seed},
                                  {"lucas_samples", opt.lucas_samples},
                                  {"unitary_forms", opt.unitary_forms},
                                  {"criteria", crit},
                                  {"all_pass", all}});
}

}  // namespace dwf
