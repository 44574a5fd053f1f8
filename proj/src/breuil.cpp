// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/breuil.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "dwork_forge/errors.hpp"
#include "dwork_forge/ff_matrix.hpp"

namespace dwf {

namespace {

size_t cyc(int64_t i, uint32_t f) { return static_cast<size_t>(((i % f) + f) % f); }

mpz_class zpow(uint64_t b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

void check_lengths(const std::vector<int64_t>& s, const std::vector<int64_t>& t, uint32_t f) {
  if (s.size() != f || t.size() != f)
    throw Error(ErrorKind::ConfigInvalid, "s and t must have length f");
}

const FFElem& twist(const FFElem& a, size_t j, const FFElem& one) { return j == 0 ? a : one; }

}  // namespace

mpz_class floor_q(const mpq_class& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

BreuilFrame make_frame(uint32_t p, uint32_t f, int64_t e) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::ConfigInvalid, "p must be an odd prime");
  if (f < 1 || e < 1) throw Error(ErrorKind::ConfigInvalid, "f and e must be positive");
  return BreuilFrame{p, f, e, field_make(p, f)};
}

RankOneBK make_rank_one(const BreuilFrame& frame, std::vector<int64_t> s, FFElem a) {
  if (s.size() != frame.f) throw Error(ErrorKind::ConfigInvalid, "s must have length f");
  if (a.field != frame.F.get() || a.is_zero())
    throw Error(ErrorKind::ConfigInvalid, "a must be a nonzero element of F");
  RankOneBK m{frame, std::move(s), a, true};
  for (int64_t si : m.s) {
    if (si < 0) throw Error(ErrorKind::ConfigInvalid, "s_i must be nonnegative");
    if (si > frame.e * (static_cast<int64_t>(frame.p) - 2)) m.breuil_height_ok = false;
  }
  return m;
}

std::vector<mpq_class> alpha_invariants(const std::vector<int64_t>& s, uint32_t p, uint32_t f) {
  mpz_class den = zpow(p, f) - 1;
  std::vector<mpq_class> out;
  for (uint32_t i = 0; i < f; ++i) {
    mpz_class num = 0;
    for (uint32_t j = 1; j <= f; ++j) num += zpow(p, f - j) * static_cast<long>(s[cyc(j + i, f)]);
    mpq_class a(num, den);
    a.canonicalize();
    out.push_back(a);
  }
  return out;
}

bool hom_exists(const RankOneBK& top, const RankOneBK& bottom) {
  if (top.a != bottom.a) return false;
  auto as = alpha_invariants(top.s, top.frame.p, top.frame.f);
  auto at = alpha_invariants(bottom.s, top.frame.p, top.frame.f);
  for (size_t i = 0; i < as.size(); ++i) {
    mpq_class d = as[i] - at[i];
    if (d.get_den() != 1 || d < 0) return false;
  }
  return true;
}

SlopeData slope_data(const std::vector<int64_t>& s, const std::vector<int64_t>& t, int64_t e,
                     uint32_t p, uint32_t f) {
  check_lengths(s, t, f);
  mpz_class den = zpow(p, f) - 1;
  SlopeData sd;
  for (uint32_t i = 0; i < f; ++i) {
    mpz_class num = 0;
    for (uint32_t j = 1; j <= f; ++j) {
      size_t idx = cyc(static_cast<int64_t>(j) + i - 1, f);
      num += zpow(p, f - j) * static_cast<long>(s[idx] - t[idx] - e);
    }
    mpq_class n(num, den);
    n.canonicalize();
    sd.n.push_back(n);
  }
  for (uint32_t i = 0; i < f; ++i) {
    mpz_class r = mpz_class(static_cast<long>(s[i] - t[i] - e)) + floor_q(sd.n[cyc(i + 1, f)]) -
                  mpz_class(static_cast<long>(p)) * floor_q(sd.n[i]) + 1;
    sd.r.push_back(r.get_si());
  }
  return sd;
}

bool slope_invariants_hold(const std::vector<int64_t>& s, const std::vector<int64_t>& t,
                           int64_t e, uint32_t p, const SlopeData& sd) {
  const uint32_t f = static_cast<uint32_t>(sd.n.size());
  for (uint32_t j = 0; j < f; ++j) {
    size_t jm = cyc(static_cast<int64_t>(j) - 1, f);
    mpq_class lhs = sd.n[jm] * static_cast<long>(p);
    mpq_class rhs = sd.n[j] + static_cast<long>(s[jm] - t[jm] - e);
    if (lhs != rhs) return false;
  }
  for (int64_t r : sd.r)
    if (r < 1 || r > static_cast<int64_t>(p)) return false;
  return true;
}

ExtProblem make_ext_problem(const RankOneBK& top, const RankOneBK& bottom) {
  if (top.frame.p != bottom.frame.p || top.frame.f != bottom.frame.f ||
      top.frame.e != bottom.frame.e || top.frame.F != bottom.frame.F)
    throw Error(ErrorKind::ConfigInvalid, "top and bottom must share a frame");
  ExtProblem pb{top, bottom, slope_data(top.s, bottom.s, top.frame.e, top.frame.p, top.frame.f),
                hom_exists(top, bottom)};
  return pb;
}

AllowedDegrees bk_extension_degrees(const std::vector<int64_t>& s, const std::vector<int64_t>& t,
                                    const BreuilFrame& frame, bool hom) {
  check_lengths(s, t, frame.f);
  AllowedDegrees ad;
  for (uint32_t i = 0; i < frame.f; ++i) {
    std::vector<int64_t> d;
    for (int64_t l = 0; l < s[i]; ++l) d.push_back(l);
    ad.poly.push_back(d);
  }
  ad.special.assign(frame.f, std::nullopt);
  if (hom) {
    auto as = alpha_invariants(s, frame.p, frame.f);
    auto at = alpha_invariants(t, frame.p, frame.f);
    for (uint32_t j = 0; j < frame.f; ++j) {
      mpq_class deg = mpq_class(static_cast<long>(s[j])) + as[j] - at[j];
      if (deg.get_den() != 1)
        throw Error(ErrorKind::SpecialDegreeNotInteger,
                    "special degree " + deg.get_str() + " at index " + std::to_string(j));
      ad.special[j] = deg.get_num().get_si();
    }
  }
  return ad;
}

std::vector<std::vector<int64_t>> degrees_with_special(const AllowedDegrees& ad, int j) {
  auto out = ad.poly;
  if (j >= 0 && static_cast<size_t>(j) < ad.special.size() && ad.special[j]) {
    auto& v = out[j];
    if (std::find(v.begin(), v.end(), *ad.special[j]) == v.end()) {
      v.push_back(*ad.special[j]);
      std::sort(v.begin(), v.end());
    }
  }
  return out;
}

std::vector<std::vector<int64_t>> breuil_forbidden_degrees(
    const ExtProblem& pb, const std::vector<std::vector<int64_t>>& allowed) {
  const auto& fr = pb.top.frame;
  std::vector<std::vector<int64_t>> out(fr.f);
  for (uint32_t j = 0; j < fr.f; ++j) {
    mpq_class nn = pb.slopes.n[cyc(j + 1, fr.f)];
    mpq_class thr = mpq_class(static_cast<long>(pb.top.s[j] - fr.e)) + (nn > 1 ? nn : mpq_class(1));
    for (int64_t l : allowed[j]) {
      int64_t diff = l - pb.bottom.s[j];
      bool congruent = ((diff % static_cast<int64_t>(fr.p)) + fr.p) % fr.p == 0;
      if (mpq_class(static_cast<long>(l)) < thr && !congruent) out[j].push_back(l);
    }
  }
  return out;
}

bool forbidden_predicate(const ExtCoeffs& y, const std::vector<std::vector<int64_t>>& forbidden) {
  for (size_t j = 0; j < y.size(); ++j)
    for (const auto& [deg, c] : y[j])
      if (!c.is_zero() &&
          std::find(forbidden[j].begin(), forbidden[j].end(), deg) != forbidden[j].end())
        return false;
  return true;
}

MonodromyResult solve_monodromy(const ExtProblem& pb, const ExtCoeffs& y, FFElem d) {
  const auto& fr = pb.top.frame;
  const FieldDesc& F = *fr.F;
  const int64_t e = fr.e;
  const auto& s = pb.top.s;
  const auto& t = pb.bottom.s;
  const size_t f = fr.f;
  if (d.field != &F || d.is_zero()) throw Error(ErrorKind::ConfigInvalid, "d must be a unit of F");
  const size_t per = static_cast<size_t>(e - 1);
  const size_t ncols = f * per;
  auto col = [&](size_t j, int64_t k) { return j * per + static_cast<size_t>(k - 1); };
  // rows keyed by (component, exponent); exponents below e only
  std::map<std::pair<size_t, int64_t>, std::pair<std::vector<FFElem>, FFElem>> rows;
  auto row = [&](size_t j, int64_t E) -> std::pair<std::vector<FFElem>, FFElem>& {
    auto it = rows.find({j, E});
    if (it == rows.end())
      it = rows.emplace(std::make_pair(j, E),
                        std::make_pair(std::vector<FFElem>(ncols, F.zero()), F.zero()))
               .first;
    return it->second;
  };
  const FFElem one = F.one();
  for (size_t j = 0; j < f; ++j) {
    const FFElem& bj = twist(pb.bottom.a, j, one);
    const FFElem& aj = twist(pb.top.a, j, one);
    for (int64_t k = 1; k < e; ++k) {
      int64_t E = e - s[j] + t[j] + static_cast<int64_t>(fr.p) * k;
      if (E < e) {
        auto& r = row(j, E);
        r.first[col(j, k)] = F.add(r.first[col(j, k)], bj);
      }
    }
    for (int64_t E = 1; E < e; ++E) {
      auto& r = row(j, E);
      size_t c = col((j + 1) % f, E);
      r.first[c] = F.sub(r.first[c], F.mul(d, aj));
    }
    for (const auto& [l, c] : y[j]) {
      if (c.is_zero()) continue;
      int64_t E = e - s[j] + l;
      if (E >= e) continue;
      FFElem v = F.mul(F.from_int(t[j] - l), c);
      if (v.is_zero()) continue;
      auto& r = row(j, E);
      r.second = F.add(r.second, v);
    }
  }
  MonodromyResult res;
  FFMatrix A;
  std::vector<FFElem> b;
  for (auto& [key, rb] : rows) {
    A.push_back(rb.first);
    b.push_back(rb.second);
  }
  if (A.empty()) {
    res.feasible = true;
  } else if (ncols == 0) {
    res.feasible = std::all_of(b.begin(), b.end(), [](const FFElem& x) { return x.is_zero(); });
  } else {
    auto sol = ff_solve(F, A, b);
    res.feasible = sol.consistent;
    if (sol.consistent) {
      res.mu.assign(f, std::vector<FFElem>(per, F.zero()));
      for (size_t j = 0; j < f; ++j)
        for (size_t k = 0; k < per; ++k) res.mu[j][k] = sol.x[j * per + k];
    }
  }
  if (res.feasible && res.mu.empty()) res.mu.assign(f, std::vector<FFElem>(per, F.zero()));
  return res;
}

std::optional<Witness> genericity_obstruction(const std::vector<int64_t>& s,
                                              const std::vector<int64_t>& t,
                                              const BreuilFrame& frame) {
  check_lengths(s, t, frame.f);
  int64_t sigma = 0;
  for (uint32_t j = 0; j < frame.f; ++j) sigma += s[j] - t[j] - frame.e;
  if (sigma >= 0)
    throw Error(ErrorKind::PreconditionViolated, "need sum_j (s_j - t_j - e) < 0");
  SlopeData sd = slope_data(s, t, frame.e, frame.p, frame.f);
  const int64_t p = frame.p;
  for (uint32_t i = 0; i < frame.f; ++i) {
    int64_t fl = floor_q(sd.n[cyc(i + 1, frame.f)]).get_si();
    bool first = fl == -1 && sd.r[i] != p;
    if (!first && fl > -2) continue;
    Witness w;
    w.i = static_cast<int>(i);
    w.plus_two = sd.r[i] == p;
    w.x = s[i] + fl - frame.e + (w.plus_two ? 2 : 1);
    return w;
  }
  return std::nullopt;
}

CovResult cov_solve_fixed(const ExtProblem& pb, const ExtCoeffs& y_prime,
                          const std::vector<std::vector<int64_t>>& support, int64_t W) {
  const auto& fr = pb.top.frame;
  const FieldDesc& F = *fr.F;
  const size_t f = fr.f;
  const auto& s = pb.top.s;
  const auto& t = pb.bottom.s;
  const int64_t p = fr.p;
  const size_t span = static_cast<size_t>(2 * W + 1);
  std::vector<size_t> yoff(f + 1, f * span);
  for (size_t j = 0; j < f; ++j) yoff[j + 1] = yoff[j] + support[j].size();
  const size_t ncols = yoff[f];
  auto lam_col = [&](size_t j, int64_t k) { return j * span + static_cast<size_t>(k + W); };
  std::map<std::pair<size_t, int64_t>, std::pair<std::map<size_t, FFElem>, FFElem>> eqs;
  auto add = [&](size_t j, int64_t E, size_t c, const FFElem& v) {
    auto& slot = eqs[{j, E}];
    auto it = slot.first.find(c);
    if (it == slot.first.end()) slot.first.emplace(c, v);
    else it->second = F.add(it->second, v);
  };
  const FFElem one = F.one();
  for (size_t j = 0; j < f; ++j) {
    const FFElem& bj = twist(pb.bottom.a, j, one);
    const FFElem& aj = twist(pb.top.a, j, one);
    size_t jm = cyc(static_cast<int64_t>(j) - 1, static_cast<uint32_t>(f));
    for (int64_t k = -W; k <= W; ++k) {
      add(j, t[j] + p * k, lam_col(jm, k), bj);
      add(j, s[j] + k, lam_col(j, k), F.neg(aj));
    }
    for (size_t i = 0; i < support[j].size(); ++i) add(j, support[j][i], yoff[j] + i, F.neg(one));
    for (const auto& [l, c] : y_prime[j]) {
      if (c.is_zero()) continue;
      auto& slot = eqs[{j, l}];
      slot.second = F.sub(slot.second, c);
    }
  }
  FFMatrix A;
  std::vector<FFElem> b;
  for (auto& [key, eq] : eqs) {
    // terms of u^{s_j} lambda_j beyond the window are not modelled
    if (key.second - s[key.first] > W) continue;
    std::vector<FFElem> r(ncols, F.zero());
    for (auto& [c, v] : eq.first) r[c] = v;
    A.push_back(std::move(r));
    b.push_back(eq.second);
  }
  CovResult res;
  res.window = W;
  auto sol = ff_solve(F, A, b);
  res.feasible = sol.consistent;
  if (sol.consistent) {
    res.y.assign(f, {});
    res.lambda.assign(f, {});
    for (size_t j = 0; j < f; ++j) {
      for (int64_t k = -W; k <= W; ++k) {
        const FFElem& v = sol.x[lam_col(j, k)];
        if (!v.is_zero()) res.lambda[j][k] = v;
      }
      for (size_t i = 0; i < support[j].size(); ++i) {
        const FFElem& v = sol.x[yoff[j] + i];
        if (!v.is_zero()) res.y[j][support[j][i]] = v;
      }
    }
  }
  return res;
}

CovResult change_of_variables_solver(const ExtProblem& pb, const ExtCoeffs& y_prime,
                                     const std::vector<std::vector<int64_t>>& support, int64_t W) {
  if (W <= 0) W = pb.top.frame.e * static_cast<int64_t>(pb.top.frame.p);
  CovResult a = cov_solve_fixed(pb, y_prime, support, W);
  CovResult b = cov_solve_fixed(pb, y_prime, support, 2 * W);
  if (a.feasible == b.feasible) return a;
  CovResult c = cov_solve_fixed(pb, y_prime, support, 4 * W);
  if (c.feasible == b.feasible) return c;
  throw Error(ErrorKind::WindowTooSmall,
              "verdict still changes between windows " + std::to_string(2 * W) + " and " +
                  std::to_string(4 * W));
}

ExtCoeffs apply_change_of_variables(const ExtProblem& pb, const ExtCoeffs& y,
                                    const ExtCoeffs& lambda) {
  const auto& fr = pb.top.frame;
  const FieldDesc& F = *fr.F;
  const size_t f = fr.f;
  const FFElem one = F.one();
  ExtCoeffs out(f);
  auto acc = [&](size_t j, int64_t deg, const FFElem& v) {
    auto it = out[j].find(deg);
    FFElem cur = it == out[j].end() ? F.zero() : it->second;
    cur = F.add(cur, v);
    if (cur.is_zero()) {
      if (it != out[j].end()) out[j].erase(it);
    } else {
      out[j][deg] = cur;
    }
  };
  for (size_t j = 0; j < f; ++j) {
    const FFElem& bj = twist(pb.bottom.a, j, one);
    const FFElem& aj = twist(pb.top.a, j, one);
    size_t jm = cyc(static_cast<int64_t>(j) - 1, static_cast<uint32_t>(f));
    for (const auto& [deg, c] : y[j]) acc(j, deg, c);
    for (const auto& [k, c] : lambda[jm])
      acc(j, pb.bottom.s[j] + static_cast<int64_t>(fr.p) * k, F.neg(F.mul(bj, c)));
    for (const auto& [k, c] : lambda[j]) acc(j, pb.top.s[j] + k, F.mul(aj, c));
  }
  return out;
}

ImageWindows etale_image_windows(const std::vector<int64_t>& s, const std::vector<int64_t>& t,
                                 const BreuilFrame& frame, bool chi_equal) {
  SlopeData sd = slope_data(s, t, frame.e, frame.p, frame.f);
  ImageWindows w;
  for (uint32_t i = 0; i < frame.f; ++i) {
    int64_t fl = floor_q(sd.n[cyc(i + 1, frame.f)]).get_si();
    w.ranges.emplace_back(s[i] + fl - frame.e + 1, s[i] + fl);
  }
  w.dimension = frame.e * frame.f;
  if (chi_equal) {
    auto as = alpha_invariants(s, frame.p, frame.f);
    auto at = alpha_invariants(t, frame.p, frame.f);
    mpq_class deg = mpq_class(static_cast<long>(s[0])) + as[0] - at[0];
    if (deg.get_den() != 1)
      throw Error(ErrorKind::SpecialDegreeNotInteger, "extra window degree " + deg.get_str());
    w.special = std::make_pair(0, deg.get_num().get_si());
    w.dimension += 1;
  }
  return w;
}

ChainVerdict chain_slope_check(const std::vector<std::vector<int64_t>>& chain, int64_t e,
                               uint32_t f) {
  const int64_t d = static_cast<int64_t>(chain.size());
  if (d < 1) throw Error(ErrorKind::PreconditionViolated, "empty chain");
  const int64_t H = e * (d - 1);
  for (const auto& v : chain) {
    if (v.size() != f) throw Error(ErrorKind::PreconditionViolated, "entry length must be f");
    for (int64_t x : v)
      if (x < 0 || x > H) throw Error(ErrorKind::PreconditionViolated, "entry outside [0, e(d-1)]");
  }
  for (int64_t i = 0; i + 1 < d; ++i) {
    int64_t sum = 0;
    for (uint32_t j = 0; j < f; ++j) sum += chain[i + 1][j] - chain[i][j] - e;
    if (sum < 0) throw Error(ErrorKind::PreconditionViolated, "step sum negative");
  }
  ChainVerdict v;
  v.pass = std::all_of(chain.front().begin(), chain.front().end(), [](int64_t x) { return x == 0; }) &&
           std::all_of(chain.back().begin(), chain.back().end(), [&](int64_t x) { return x == H; });
  return v;
}

ChainSweep chain_sweep(int d, int64_t e, uint32_t f) {
  const int64_t H = e * (d - 1);
  std::vector<std::vector<int64_t>> vecs;
  std::vector<int64_t> cur(f, 0);
  for (;;) {
    vecs.push_back(cur);
    size_t i = 0;
    while (i < f && ++cur[i] > H) cur[i++] = 0;
    if (i == f) break;
  }
  std::vector<int64_t> sums;
  for (const auto& v : vecs) {
    int64_t s = 0;
    for (int64_t x : v) s += x;
    sums.push_back(s);
  }
  ChainSweep out;
  std::vector<size_t> path;
  const int64_t step = e * static_cast<int64_t>(f);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == d) {
      std::vector<std::vector<int64_t>> chain;
      for (size_t idx : path) chain.push_back(vecs[idx]);
      ++out.chains;
      if (!chain_slope_check(chain, e, f).pass) ++out.failures;
      return;
    }
    for (size_t k = 0; k < vecs.size(); ++k) {
      if (!path.empty() && sums[k] - sums[path.back()] < step) continue;
      path.push_back(k);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace dwf
