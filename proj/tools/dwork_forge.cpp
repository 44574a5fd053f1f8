// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Command-line driver for dwork-forge.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dwork_forge/breuil.hpp"
#include "dwork_forge/errors.hpp"
#include "dwork_forge/hypergeometric.hpp"
#include "dwork_forge/lambda_prime.hpp"
#include "dwork_forge/ordinarity.hpp"
#include "dwork_forge/parallel.hpp"
#include "dwork_forge/report.hpp"
#include "dwork_forge/selftest.hpp"
#include "dwork_forge/unitary.hpp"

using namespace dwf;

namespace {

struct Common {
  std::string out;
  std::string format = "json";
  int threads = 0;
};

struct HGArgs {
  int N = 3;
  int n = 0;
  std::vector<int> R;
  uint32_t p = 7;
  uint32_t f = 1;
};

void add_hg_options(CLI::App* app, HGArgs& a) {
  app->add_option("--N", a.N, "order of the characters (odd, >= 3)")->required();
  app->add_option("--R", a.R, "character exponents; omitted: chosen automatically from --n");
  app->add_option("--n", a.n, "rank, used when --R is omitted");
  app->add_option("--p", a.p, "characteristic")->required();
  app->add_option("--f", a.f, "degree of the base field over F_p");
}

HGParams hg_params(const HGArgs& a) {
  if (!a.R.empty()) {
    if (a.n && a.n != static_cast<int>(a.R.size()))
      throw Error(ErrorKind::ConfigInvalid, "--n disagrees with the length of --R");
    return make_hg_params(a.N, a.R);
  }
  if (a.n < 1) throw Error(ErrorKind::ConfigInvalid, "give --R or --n");
  return select_chi(a.N, a.n);
}

Field hg_field(const HGArgs& a) {
  Field k = field_make(a.p, a.f);
  if ((k->q() - 1) % static_cast<uint64_t>(a.N) != 0)
    throw Error(ErrorKind::NNotDividingQMinus1,
                "--N " + std::to_string(a.N) + " does not divide q - 1 = " + std::to_string(k->q() - 1));
  return k;
}

FFElem parse_point(const Field& k, int64_t code) {
  if (code < 0 || static_cast<uint64_t>(code) >= k->q())
    throw Error(ErrorKind::BadPoint, "--x must be a code in [0, q)");
  FFElem x = k->from_code(static_cast<uint32_t>(code));
  if (x.is_zero() || x.k == 0) throw Error(ErrorKind::BadPoint, "--x must avoid 0 and 1");
  return x;
}

json point_json(const Field& k, const CharPolyRecord& rec, bool with_checks) {
  json j = to_json(rec);
  j["x_code"] = k->code(k->from_dlog(rec.x_dlog));
  if (with_checks) {
    DetReport d = verify_det(rec);
    PurityReport pu = verify_purity(rec);
    j["det"] = {{"abs_pass", d.abs_pass}, {"signed_applicable", d.signed_applicable},
                {"signed_pass", d.signed_pass}, {"observed_sign", d.observed_sign}};
    j["purity"] = {{"pass", pu.pass}};
  }
  return j;
}

json read_json_arg(const std::string& text, const std::string& file) {
  if (!file.empty()) {
    std::ifstream is(file);
    if (!is) throw Error(ErrorKind::ConfigInvalid, "cannot read " + file);
    std::stringstream ss;
    ss << is.rdbuf();
    return json::parse(ss.str());
  }
  if (text.empty()) throw Error(ErrorKind::ConfigInvalid, "no matrix given");
  return json::parse(text);
}

ExtCoeffs parse_coeffs(const FieldDesc& F, const json& j, uint32_t f) {
  if (!j.is_array() || j.size() != f)
    throw Error(ErrorKind::ConfigInvalid, "--y must be an array of f objects {degree: code}");
  ExtCoeffs y(f);
  for (uint32_t i = 0; i < f; ++i)
    for (const auto& [deg, code] : j[i].items()) {
      if (!code.is_number_integer() || code.get<int64_t>() < 0 || code.get<uint64_t>() >= F.q())
        throw Error(ErrorKind::ConfigInvalid, "coefficient codes must lie in [0, q)");
      FFElem c = F.from_code(code.get<uint32_t>());
      if (!c.is_zero()) y[i][std::stoll(deg)] = c;
    }
  return y;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dwork-forge: exact computations for hypergeometric sheaves, Breuil modules and unitary groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out", common.out, "output path (default stdout)");
  app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", common.threads, "worker cap (overrides DWORK_FORGE_THREADS)");

  // Each handler returns true when every hard check passed.
  std::function<bool(json&)> handler;

  HGArgs hg;
  int64_t x_code = 2;
  bool naive = false;
  auto* trace = app.add_subcommand("hg-trace", "Frobenius trace at one point");
  add_hg_options(trace, hg);
  trace->add_option("--x", x_code, "point as a polynomial-basis code");
  trace->add_flag("--naive", naive, "cross-check against direct summation");
  trace->callback([&] {
    handler = [&](json& out) {
      HGParams P = hg_params(hg);
      Field k = hg_field(hg);
      FFElem x = parse_point(k, x_code);
      TraceEngine eng(P, k);
      CyclotomicInt t = eng.trace(x.k);
      json pl = {{"params", to_json(P)}, {"q", k->q()}, {"x_code", x_code}, {"trace", to_json(t)}};
      bool ok = true;
      if (naive) {
        CyclotomicInt tn = trace_naive(P, x);
        pl["trace_naive"] = to_json(tn);
        ok = tn == t;
      }
      pl["rows"] = json::array({{{"x_code", x_code}, {"trace", t.to_string()}}});
      out = make_report("hg-trace", pl);
      return ok;
    };
  });

  auto* charpoly = app.add_subcommand("hg-charpoly", "characteristic polynomial of Frobenius at one point");
  add_hg_options(charpoly, hg);
  charpoly->add_option("--x", x_code, "point as a polynomial-basis code");
  charpoly->callback([&] {
    handler = [&](json& out) {
      HGParams P = hg_params(hg);
      Field k = hg_field(hg);
      FFElem x = parse_point(k, x_code);
      FieldTower tower(k, static_cast<uint32_t>(P.n));
      CharPolyRecord rec = char_poly(P, tower, x);
      rec.slopes = newton_polygon(rec, make_lambda(P.N, hg.p));
      json pj = point_json(k, rec, true);
      bool ok = pj["det"]["abs_pass"].get<bool>() && pj["purity"]["pass"].get<bool>();
      out = make_report("hg-charpoly", {{"params", to_json(P)}, {"point", pj}, {"rows", json::array({pj})}});
      return ok;
    };
  });

  auto* scan = app.add_subcommand("hg-scan", "characteristic polynomials at every point with det and purity checks");
  add_hg_options(scan, hg);
  scan->callback([&] {
    handler = [&](json& out) {
      HGParams P = hg_params(hg);
      Field k = hg_field(hg);
      FieldTower tower(k, static_cast<uint32_t>(P.n));
      std::vector<int64_t> xs;
      for (int64_t t = 1; t + 1 < static_cast<int64_t>(k->q()); ++t) xs.push_back(t);
      auto recs = char_poly_batch(P, tower, xs);
      json rows = json::array();
      int det_fail = 0, pur_fail = 0;
      for (const auto& rec : recs) {
        DetReport d = verify_det(rec);
        PurityReport pu = verify_purity(rec);
        if (!d.abs_pass || (d.signed_applicable && !d.signed_pass)) ++det_fail;
        if (!pu.pass) ++pur_fail;
        json co = json::array();
        for (const auto& c : rec.coeffs) co.push_back(c.to_string());
        rows.push_back({{"x_code", k->code(k->from_dlog(rec.x_dlog))},
                        {"x_dlog", rec.x_dlog},
                        {"trace", rec.traces[0].to_string()},
                        {"coeffs", co},
                        {"det_abs", d.abs_pass},
                        {"det_signed", d.signed_applicable ? json(d.signed_pass) : json(nullptr)},
                        {"purity", pu.pass}});
      }
      out = make_report("hg-scan", {{"params", to_json(P)},
                                    {"q", k->q()},
                                    {"rows", rows},
                                    {"summary", {{"points", recs.size()},
                                                 {"det_failures", det_fail},
                                                 {"purity_failures", pur_fail}}}});
      return det_fail == 0 && pur_fail == 0;
    };
  });

  uint32_t l = 7, d_ext = 1;
  int64_t tau = 1;
  auto* ord = app.add_subcommand("ordinary-scan", "u(T), the norm identity and unit-root checks over k(v) or an extension");
  ord->add_option("--N", hg.N, "order of the characters")->required();
  ord->add_option("--R", hg.R, "character exponents");
  ord->add_option("--n", hg.n, "rank, used when --R is omitted");
  ord->add_option("--l", l, "residue characteristic, q_v = l")->required();
  ord->add_option("--d", d_ext, "extension degree over k(v)");
  ord->add_option("--tau", tau, "embedding twist, coprime to N");
  ord->callback([&] {
    handler = [&](json& out) {
      HGParams P = hg_params(hg);
      OrdinaryTest T = make_ordinary_test(P, l, tau);
      Field k = ordinary_field(T, d_ext);
      NormIdentityReport rep = verify_norm_identity(T, k, d_ext == 1);
      FieldTower tower(k, static_cast<uint32_t>(P.n));
      std::vector<int64_t> xs;
      for (const auto& row : rep.rows) xs.push_back(row.x_dlog);
      auto recs = char_poly_batch(P, tower, xs);
      json rows = json::array();
      int hard = 0, applicable = 0, full = 0;
      for (size_t i = 0; i < recs.size(); ++i) {
        recs[i].slopes = newton_polygon(recs[i], T.lambda);
        UnitRootReport u = unit_root_check(T, recs[i], k->from_code(rep.rows[i].u_code));
        if (u.applicable) {
          ++applicable;
          if (u.fully_ordinary) ++full;
        }
        if (!u.pass) ++hard;
        const auto& r = rep.rows[i];
        rows.push_back({{"x_code", k->code(k->from_dlog(r.x_dlog))},
                        {"u_code", r.u_code},
                        {"trace_mod_lambda", r.trace_mod_lambda},
                        {"norm_u", r.norm_u},
                        {"identity_ok", r.identity_ok},
                        {"slopes", to_json(*recs[i].slopes)},
                        {"min_slope_zero", u.min_slope_zero},
                        {"fully_ordinary", u.fully_ordinary}});
      }
      out = make_report("ordinary-scan",
                        {{"params", to_json(P)},
                         {"l", l},
                         {"tau", tau},
                         {"d", d_ext},
                         {"c", T.c},
                         {"u_coeffs", T.u_coeffs},
                         {"rows", rows},
                         {"summary", {{"points", rows.size()},
                                      {"norm_identity_failures", rep.failures},
                                      {"u_nonvanishing", applicable},
                                      {"min_slope_failures", hard},
                                      {"advisory_fully_ordinary", full}}}});
      return rep.failures == 0 && hard == 0;
    };
  });

  uint32_t bp = 5, bf = 1;
  int64_t be = 1;
  int64_t mono_max = 1 << 16;
  auto* generic = app.add_subcommand("breuil-generic", "genericity witnesses and oracle verdicts for every negative-slope frame");
  generic->add_option("--p", bp, "odd prime")->required();
  generic->add_option("--e", be, "ramification index")->required();
  generic->add_option("--f", bf, "residue degree");
  generic->add_option("--mono-max", mono_max, "largest exhaustive monodromy enumeration per frame");
  generic->callback([&] {
    handler = [&](json& out) {
      BreuilFrame fr = make_frame(bp, bf, be);
      const int64_t H = be * (static_cast<int64_t>(bp) - 2);
      std::vector<std::pair<std::vector<int64_t>, std::vector<int64_t>>> frames;
      std::vector<int64_t> v(2 * bf, 0);
      for (;;) {
        std::vector<int64_t> s(v.begin(), v.begin() + bf), t(v.begin() + bf, v.end());
        int64_t sigma = 0;
        for (uint32_t j = 0; j < bf; ++j) sigma += s[j] - t[j] - be;
        if (sigma < 0) frames.emplace_back(s, t);
        size_t i = 0;
        while (i < v.size() && ++v[i] > H) v[i++] = 0;
        if (i == v.size()) break;
      }
      auto res = parallel_map(frames.size(), [&](size_t i) {
        return generic_frame(fr, frames[i].first, frames[i].second, mono_max);
      });
      json rows = json::array();
      bool ok = true;
      for (auto& g : res) {
        ok = ok && g.witness_found && g.witness_infeasible && g.monodromy_mismatches == 0;
        rows.push_back(std::move(g.report));
      }
      out = make_report("breuil-generic", {{"p", bp}, {"e", be}, {"f", bf}, {"rows", rows}});
      return ok;
    };
  });

  std::vector<int64_t> bs, bt;
  std::string ytext;
  int64_t window = 0;
  auto* oracle = app.add_subcommand("breuil-oracle", "decide whether an extension class comes from a Breuil module");
  oracle->add_option("--p", bp, "odd prime")->required();
  oracle->add_option("--e", be, "ramification index")->required();
  oracle->add_option("--f", bf, "residue degree");
  oracle->add_option("--s", bs, "top exponents")->required();
  oracle->add_option("--t", bt, "bottom exponents")->required();
  oracle->add_option("--y", ytext, "class as JSON: [{\"degree\": code}, ...]")->required();
  oracle->add_option("--window", window, "Laurent window W (default e p)");
  oracle->callback([&] {
    handler = [&](json& out) {
      BreuilFrame fr = make_frame(bp, bf, be);
      const FieldDesc& F = *fr.F;
      ExtProblem pb = make_ext_problem(make_rank_one(fr, bs, F.one()), make_rank_one(fr, bt, F.one()));
      AllowedDegrees ad = bk_extension_degrees(bs, bt, fr, pb.hom);
      auto allowed = degrees_with_special(ad, pb.hom ? 0 : -1);
      auto forbidden = breuil_forbidden_degrees(pb, allowed);
      std::vector<std::vector<int64_t>> support(bf);
      for (uint32_t j = 0; j < bf; ++j)
        for (int64_t d : allowed[j])
          if (std::find(forbidden[j].begin(), forbidden[j].end(), d) == forbidden[j].end())
            support[j].push_back(d);
      ExtCoeffs y = parse_coeffs(F, json::parse(ytext), bf);
      CovResult cov = change_of_variables_solver(pb, y, support, window);
      json pl = {{"p", bp}, {"e", be}, {"f", bf}, {"s", bs}, {"t", bt},
                 {"n", to_json(pb.slopes.n)}, {"r", pb.slopes.r}, {"hom", pb.hom},
                 {"allowed", allowed}, {"forbidden", forbidden},
                 {"verdict", cov.feasible ? "feasible" : "infeasible"}, {"window", cov.window}};
      if (cov.feasible) {
        pl["y"] = to_json(F, cov.y);
        pl["lambda"] = to_json(F, cov.lambda);
      }
      out = make_report("breuil-oracle", pl);
      return true;
    };
  });

  int cd = 4;
  auto* chain = app.add_subcommand("breuil-chain", "exhaustive chain-slope forcing check");
  chain->add_option("--d", cd, "chain length")->required();
  chain->add_option("--e", be, "ramification index")->required();
  chain->add_option("--f", bf, "residue degree");
  chain->callback([&] {
    handler = [&](json& out) {
      if (cd < 1) throw Error(ErrorKind::ConfigInvalid, "--d must be positive");
      ChainSweep cs = chain_sweep(cd, be, bf);
      out = make_report("breuil-chain", {{"d", cd}, {"e", be}, {"f", bf},
                                         {"rows", json::array({{{"chains", cs.chains}, {"failures", cs.failures}}})}});
      return cs.failures == 0;
    };
  });

  uint32_t up = 3, uf = 1;
  std::string mtext, mfile;
  auto* norm = app.add_subcommand("unitary-normalize", "change of basis taking a Hermitian form over F_{q^2} to I");
  norm->add_option("--p", up, "characteristic")->required();
  norm->add_option("--f", uf, "q = p^f");
  norm->add_option("--matrix", mtext, "Gram matrix as JSON array of codes in F_{q^2}");
  norm->add_option("--matrix-file", mfile, "file holding the Gram matrix");
  norm->callback([&] {
    handler = [&](json& out) {
      UnitaryContext ctx = make_unitary(up, uf);
      const FieldDesc& F = *ctx.F;
      HermitianSpace sp = make_hermitian_space(ctx, matrix_from_json(F, read_json_arg(mtext, mfile)));
      FFMatrix C = diagonalize_to_identity(ctx, sp);
      bool cert = ff_mul(F, ff_mul(F, adjoint(ctx, C), sp.gram), C) == ff_identity(F, sp.n);
      out = make_report("unitary-normalize", {{"p", up}, {"q", ctx.q}, {"defining_poly", F.defining_poly()},
                                              {"C", to_json(F, C)}, {"certificate", cert}});
      return cert;
    };
  });

  int sm = 2, sn = 1;
  int64_t beta = 0;
  auto* sym = app.add_subcommand("unitary-sym", "symmetric-power image of diag(beta, 1/beta)^n in SU_m");
  sym->add_option("--p", up, "odd prime")->required();
  sym->add_option("--m", sm, "dimension")->required();
  sym->add_option("--n", sn, "power of the torus element");
  sym->add_option("--beta", beta, "torus parameter (default: smallest primitive root)");
  sym->callback([&] {
    handler = [&](json& out) {
      UnitaryContext ctx = make_unitary(up);
      const FieldDesc& F = *ctx.F;
      SymPowerEmbed s = sym_power_embed(ctx, sn, sm, beta);
      json eig = json::array();
      for (const auto& x : s.eigenvalues) eig.push_back(F.code(x));
      out = make_report("unitary-sym", {{"p", up}, {"m", sm}, {"n", sn}, {"beta", s.beta},
                                        {"alpha", s.alpha}, {"defining_poly", F.defining_poly()},
                                        {"form", to_json(F, s.form)}, {"matrix", to_json(F, s.matrix)},
                                        {"eigenvalues", eig}, {"scalar", F.code(s.scalar)},
                                        {"in_su", s.in_su}, {"spectrum_ok", s.spectrum_ok}});
      return s.in_su && s.spectrum_ok;
    };
  });

  SelftestOptions st;
  std::vector<int> ids;
  auto* self = app.add_subcommand("selftest", "run every acceptance criterion");
  self->add_option("--seed", st.seed, "seed for the randomized suites");
  self->add_option("--criteria", ids, "subset of criterion ids");
  self->callback([&] {
    handler = [&](json& out) {
      for (int id : ids)
        if (id < 1 || id > kCriterionCount)
          throw Error(ErrorKind::ConfigInvalid, "--criteria entries must lie in [1, " +
                                                    std::to_string(kCriterionCount) + "]");
      auto res = run_selftest(st, ids);
      out = selftest_report(res, st);
      json rows = json::array();
      for (const auto& r : res) rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}});
      out["payload"]["rows"] = rows;
      return out["payload"]["all_pass"].get<bool>();
    };
  });

  CLI11_PARSE(app, argc, argv);

  if (common.threads > 0) setenv("DWORK_FORGE_THREADS", std::to_string(common.threads).c_str(), 1);
  try {
    json report;
    bool ok = handler(report);
    emit(render(report, common.format), common.out);
    return ok ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: ConfigInvalid: bad JSON input: " << e.what() << "\n";
    return 2;
  }
}
