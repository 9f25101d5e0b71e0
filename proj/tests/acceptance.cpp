// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "geoprox/cli.hpp"
#include "geoprox/laws.hpp"
#include "geoprox/section5.hpp"
#include "geoprox/solvers.hpp"
#include "support.hpp"

using namespace geoprox;
using namespace geoprox::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  Json report = Json::object();

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

constexpr std::uint64_t kSeed = 20240611;

// 1. Slice pair at dim 8.
Outcome c1_section5() {
  Outcome o;
  const auto inst = build_instance(8);
  const auto r = verify_section5(inst, 10000, kSeed, 1e-9);
  o.report = to_json(r);
  o.require(std::abs(r.dist - 1.0) <= 1e-9, "dist " + fmt(r.dist));
  o.require(std::abs(r.diam - 2.0) <= 1e-9, "diam " + fmt(r.diam));
  o.require(std::abs(r.delta_2e1_a - 1.0) <= 1e-9, "delta(2e1,A) " + fmt(r.delta_2e1_a));
  o.require(std::abs(r.d_2e1_a - 1.0) <= 1e-9, "d(2e1,A) " + fmt(r.d_2e1_a));
  const auto maps = section5_cyclic_maps(inst);
  o.require(!maps.empty(), "no corpus maps");
  Json gaps = Json::array();
  for (const auto& m : maps) {
    const auto tr = cyclic_iterate(m, inst.unit(0, 2.0), 1e-9, 10);
    const auto tx = geoprox::apply(m, inst.unit(0, 2.0));
    const double g1 = distance(inst.space, inst.unit(0, 2.0), tx);
    const double g2 = distance(inst.space, tx, geoprox::apply(m, tx));
    o.require(std::abs(g1 - 1.0) <= 1e-9 && std::abs(g2 - 1.0) <= 1e-9 && std::abs(*tr.pair_gap - 1.0) <= 1e-9,
              "gap for " + m.name);
    gaps.push_back({{"map", m.name}, {"gap_first", g1}, {"gap_second", g2}, {"pair_gap", *tr.pair_gap}});
  }
  o.report["corpus_gaps"] = gaps;
  if (o.pass) o.detail = "dist=" + fmt(r.dist) + " diam=" + fmt(r.diam) + " delta(2e1,A)=" + fmt(r.delta_2e1_a) +
                         " gaps=1 on " + std::to_string(maps.size()) + " maps";
  return o;
}

// 2. PNS-failure surrogate across dimensions.
Outcome c2_surrogate() {
  Outcome o;
  double prev = -1.0;
  std::string mins;
  for (int dim : {5, 9, 17, 33}) {
    const auto r = verify_section5(build_instance(dim), 10000, kSeed, 1e-6);
    o.report[std::to_string(dim)] = {{"min", r.pns_surrogate_min}, {"bound", r.pns_surrogate_bound}};
    o.require(r.pns_surrogate_min >= r.pns_surrogate_bound - 1e-6, "dim " + std::to_string(dim) + " below bound");
    o.require(r.pns_surrogate_min >= prev, "not monotone at dim " + std::to_string(dim));
    prev = r.pns_surrogate_min;
    mins += (mins.empty() ? "" : ",") + fmt(r.pns_surrogate_min);
  }
  if (o.pass) o.detail = "mins=" + mins;
  return o;
}

// 3. Law suite.
Outcome c3_laws() {
  Outcome o;
  const std::vector<SpaceDescriptor> flagged{SpaceDescriptor::euclidean(2), SpaceDescriptor::euclidean(3),
                                             SpaceDescriptor::euclidean(8), SpaceDescriptor::hyperbolic_plane(),
                                             star_tree(), caterpillar_tree()};
  int runs = 0;
  for (const auto& sp : flagged)
    for (LawId law : kAllLaws) {
      const auto r = verify_law(sp, law, 10000, kSeed, 1e-9);
      o.report[sp.name() + " " + std::string(law_name(law))] = r.violations;
      o.require(r.violations == 0 && r.samples_run == 10000, sp.name() + " " + std::string(law_name(law)));
      ++runs;
    }
  const auto M = SpaceDescriptor::max_norm_seq(2);
  for (LawId law : {LawId::StrictConvexity, LawId::Cat0FourPoint}) {
    const auto r = verify_law(M, law, 10000, kSeed, 1e-9);
    o.report["max-norm " + std::string(law_name(law))] = to_json(r);
    o.require(r.violations >= 1, "no violation of " + std::string(law_name(law)) + " in max-norm");
    if (law == LawId::Cat0FourPoint && r.witness.size() == 4)
      o.require(!four_point_holds(M, r.witness[0], r.witness[1], r.witness[2], r.witness[3], 1e-9),
                "sampled four-point witness does not re-check");
  }
  // The fixed quadruple: diagonals squared 4 + 4 = 8 against sides squared 1 + 1 + 1 + 1 = 4.
  const auto x = maxnorm({0, 0}), y = maxnorm({1, 1}), z = maxnorm({2, 0}), p = maxnorm({1, -1});
  auto sq = [&](const SpacePoint& u, const SpacePoint& v) { return std::pow(distance(M, u, v), 2); };
  const double lhs = sq(x, z) + sq(y, p);
  const double rhs = sq(x, y) + sq(y, z) + sq(z, p) + sq(p, x);
  o.require(std::abs(lhs - 8.0) <= 1e-12 && std::abs(rhs - 4.0) <= 1e-12, "quadruple LHS " + fmt(lhs) + " RHS " + fmt(rhs));
  o.require(!four_point_holds(M, x, y, z, p, 1e-9), "quadruple passes four-point");
  if (o.pass) o.detail = std::to_string(runs) + " law runs clean; max-norm witness LHS 8 vs RHS 4";
  return o;
}

std::vector<PairDescriptor> proximal_cat0_pairs() {
  const auto E2 = SpaceDescriptor::euclidean(2);
  const auto E3 = SpaceDescriptor::euclidean(3);
  const auto E8 = SpaceDescriptor::euclidean(8);
  const auto H = SpaceDescriptor::hyperbolic_plane();
  const auto T = star_tree();
  const auto S = tree_space("symmetric.json");
  PolytopeSet simplex, lifted;
  for (int i = 0; i < 8; ++i) {
    std::vector<double> v(8, 0.0);
    if (i > 0) v[static_cast<std::size_t>(i - 1)] = 1.0;
    simplex.vertices.push_back(euclid(v));
    v[7] = 2.0;
    lifted.vertices.push_back(euclid(v));
  }
  const PolytopeSet tet{{euclid({0, 0, 0}), euclid({1, 0, 0}), euclid({0, 1, 0}), euclid({0, 0, 1})}};
  const BallSet hball{hyperbolic::from_polar(0.4, 1.0), 1.2};
  const SubtreeHullSet sub{{vertex(T, "a"), vertex(T, "b"), vertex(T, "d")}};
  return {
      {E2, SegmentSet{e2(-1, -1), e2(-1, 1)}, SegmentSet{e2(1, -1), e2(1, 1)}, {}},
      {E3, tet, tet, {}},
      {E8, simplex, lifted, {}},
      {H, hball, hball, {}},
      {T, sub, sub, {}},
      {S, SegmentSet{vertex(S, "a2"), vertex(S, "a2")}, SegmentSet{vertex(S, "b2"), vertex(S, "b2")}, {}},
  };
}

// 4. Projection maps are relatively nonexpansive, including same-set pairs.
Outcome c4_projection_maps() {
  Outcome o;
  o.report = Json::array();
  int i = 0;
  for (const auto& p : proximal_cat0_pairs()) {
    const bool proximal = is_proximal({p.space, p.a, p.b, {500, kSeed}}, 1e-9).proximal;
    const auto r = check_rel_nonexpansive(make_projection_map(p), 10000, kSeed, 1e-8, true);
    o.report.push_back({{"space", p.space.name()}, {"proximal", proximal}, {"violations", r.violations},
                        {"samples", r.samples_run}, {"worst_margin", r.worst_margin}});
    o.require(proximal, "instance " + std::to_string(i) + " not proximal");
    o.require(r.violations == 0, "instance " + std::to_string(i) + " violations " + std::to_string(r.violations));
    ++i;
  }
  if (o.pass) o.detail = std::to_string(i) + " instances, 0 violations at tol 1e-8";
  return o;
}

MapDescriptor rotation_map() {
  const auto E = SpaceDescriptor::euclidean(2);
  const BallSet disk{e2(0.5, -0.25), 2.5};
  return MapDescriptor{"rotation", MapMode::Noncyclic, {rotation_2d(std::numbers::pi / 3, {0.5, -0.25})},
                       std::nullopt, PairDescriptor{E, disk, disk, {}}};
}

// 5. Midpoint iteration on the rotation.
Outcome c5_midpoint() {
  Outcome o;
  const auto T = rotation_map();
  const auto c = e2(0.5, -0.25);
  const auto& E = T.pair.space;
  const auto tr = midpoint_iterate(T, e2(2.3, 0.9), 1e-6, 10000);
  o.report = {{"n_iters", tr.n_iters}, {"final_gap", tr.gaps.back()}, {"reason", to_string(tr.stopped_reason)}};
  o.require(tr.stopped_reason == StopReason::GapBelowEps && tr.gaps.back() <= 1e-6, "final gap " + fmt(tr.gaps.back()));
  for (std::size_t n = 1; n < tr.gaps.size(); ++n) {
    if (tr.gaps[n] > tr.gaps[n - 1]) {
      o.require(false, "gap increases at n=" + std::to_string(n));
      break;
    }
    if (distance(E, c, tr.iterates[n]) > distance(E, c, tr.iterates[n - 1]) + 1e-9) {
      o.require(false, "Fejer fails at n=" + std::to_string(n));
      break;
    }
  }
  if (o.pass) o.detail = "n=" + std::to_string(tr.n_iters) + " final gap " + fmt(tr.gaps.back());
  return o;
}

// 6. Phi bound.
Outcome c6_phi() {
  Outcome o;
  o.report = Json::array();
  const auto T = rotation_map();
  const auto p1 = phi_bound(1, 0.5, ModulusSpec::cat0()).phi;
  const auto p2 = phi_bound(2, 0.5, ModulusSpec::cat0()).phi;
  o.require(p1 == 126, "phi(1,0.5)=" + std::to_string(p1));
  o.require(p2 == 1020, "phi(2,0.5)=" + std::to_string(p2));
  int worst_slack = 1 << 30;
  for (double b : {1.0, 2.0})
    for (double eps : {0.5, 0.1, 0.01}) {
      const long long phi = phi_bound(b, eps, ModulusSpec::cat0()).phi;
      for (double angle : {0.0, 2.0, 4.0}) {
        const auto x0 = e2(0.5 + b * std::cos(angle), -0.25 + b * std::sin(angle));
        const auto tr = midpoint_iterate(T, x0, eps, 10000);
        const bool ok = tr.stopped_reason == StopReason::GapBelowEps && tr.n_iters <= phi;
        o.report.push_back({{"b", b}, {"eps", eps}, {"angle", angle}, {"hit", tr.n_iters}, {"phi", phi}});
        o.require(ok, "b=" + fmt(b) + " eps=" + fmt(eps) + " hit " + std::to_string(tr.n_iters) + " > phi " +
                          std::to_string(phi));
        worst_slack = std::min(worst_slack, static_cast<int>(phi - tr.n_iters));
      }
    }
  if (o.pass) o.detail = "phi(1,0.5)=126 phi(2,0.5)=1020; 18 runs within bound (min slack " +
                         std::to_string(worst_slack) + ")";
  return o;
}

struct PnsCase {
  SpaceDescriptor space;
  ConvexSetDescriptor h1, h2;
  SpacePoint x, y;
};

PnsCase pns_case(int k) {
  Rng rng = sample_rng(kSeed, stream_id("acceptance-pns"), static_cast<std::uint64_t>(k));
  auto pick2 = [&](const SpaceDescriptor& sp, const ConvexSetDescriptor& s) {
    auto x = sample_in_set(sp, s, rng);
    auto y = sample_in_set(sp, s, rng);
    while (distance(sp, x, y) < 1e-3) y = sample_in_set(sp, s, rng);
    return std::pair{x, y};
  };
  switch (k % 5) {
    case 0: {
      // Parallel segments with an orthogonal offset.
      const int dim = 2 + k % 4;
      const auto E = SpaceDescriptor::euclidean(dim);
      std::vector<double> p(dim), q(dim), s(dim);
      for (int i = 0; i < dim; ++i) {
        p[i] = normal(rng);
        q[i] = normal(rng);
        s[i] = normal(rng);
      }
      double uv = 0, vv = 0;
      for (int i = 0; i < dim; ++i) {
        uv += s[i] * (q[i] - p[i]);
        vv += (q[i] - p[i]) * (q[i] - p[i]);
      }
      std::vector<double> p2(p), q2(q);
      for (int i = 0; i < dim; ++i) {
        s[i] -= uv / vv * (q[i] - p[i]);
        p2[i] += s[i];
        q2[i] += s[i];
      }
      const SegmentSet h1{euclid(p), euclid(q)}, h2{euclid(p2), euclid(q2)};
      auto [x, y] = pick2(E, h1);
      return {E, h1, h2, x, y};
    }
    case 1: {
      const auto E = SpaceDescriptor::euclidean(3);
      const BallSet b{euclid({normal(rng), normal(rng), normal(rng)}), uniform(rng, 0.5, 2.0)};
      auto [x, y] = pick2(E, b);
      return {E, b, b, x, y};
    }
    case 2: {
      const auto H = SpaceDescriptor::hyperbolic_plane();
      const BallSet b{hyperbolic::from_polar(uniform(rng, 0, 1.5), uniform(rng, 0, 6.28)), uniform(rng, 0.3, 1.5)};
      auto [x, y] = pick2(H, b);
      return {H, b, b, x, y};
    }
    case 3: {
      const auto T = caterpillar_tree();
      SubtreeHullSet s;
      for (int i = 0; i < 3; ++i) s.generators.push_back(std::get<TreePoint>(random_point(T, rng)));
      while (distance(T, s.generators[0], s.generators[1]) < 0.2)
        s.generators[1] = std::get<TreePoint>(random_point(T, rng));
      auto [x, y] = pick2(T, s);
      return {T, s, s, x, y};
    }
    default: {
      const auto E = SpaceDescriptor::euclidean(3);
      PolytopeSet P;
      for (int i = 0; i < 5; ++i) P.vertices.push_back(euclid({normal(rng), normal(rng), normal(rng)}));
      auto [x, y] = pick2(E, P);
      return {E, P, P, x, y};
    }
  }
}

// 7. PNS witnesses.
Outcome c7_pns() {
  Outcome o;
  const auto E = SpaceDescriptor::euclidean(2);
  const auto w = pns_witness(E, SegmentSet{e2(0, 0), e2(0, 1)}, SegmentSet{e2(1, 0), e2(1, 1)}, e2(0, 0), e2(0, 1),
                             ModulusSpec::cat0(), 1e-9);
  o.require(std::abs(w.delta_m1_h2 - std::sqrt(5.0) / 2) <= 1e-9, "delta(m1,H2) " + fmt(w.delta_m1_h2));
  o.require(std::abs(w.alpha - std::sqrt(7.0 / 8.0)) <= 1e-9, "alpha " + fmt(w.alpha));
  o.report["worked"] = to_json(w);
  Json cases = Json::array();
  for (int k = 0; k < 20; ++k) {
    const auto c = pns_case(k);
    const auto pw = pns_witness(c.space, c.h1, c.h2, c.x, c.y, ModulusSpec::cat0(), 1e-9);
    cases.push_back({{"space", c.space.name()}, {"alpha", pw.alpha}, {"diam", pw.diam},
                     {"delta_m1_h2", pw.delta_m1_h2}, {"delta_m2_h1", pw.delta_m2_h1}});
    o.require(pw.bound_holds(1e-8), "case " + std::to_string(k) + " exceeds alpha bound");
    o.require(pw.strictly_inside(), "case " + std::to_string(k) + " not strictly inside");
  }
  o.report["cases"] = cases;
  if (o.pass) o.detail = "20 instances; worked example delta=" + fmt(w.delta_m1_h2) + " alpha=" + fmt(w.alpha);
  return o;
}

// 8. Proximal subsets A0, B0.
Outcome c8_min_sets() {
  Outcome o;
  const PairDescriptor rect{SpaceDescriptor::euclidean(2), rectangle(-2, -1, -1, 1), rectangle(1, 2, 0, 2),
                            {40000, kSeed}};
  const auto rep = min_sets(rect, 1e-9);
  // Hausdorff distance between the sampled A0 and {-1} x [0, 1].
  std::vector<double> ys;
  double off = 0.0;
  for (const auto& [a, b] : rep.a0) {
    const auto c = coords(a);
    off = std::max({off, std::abs(c[0] + 1.0), -c[1], c[1] - 1.0});
    ys.push_back(c[1]);
  }
  std::sort(ys.begin(), ys.end());
  double cover = ys.empty() ? 1.0 : std::max(ys.front(), 1.0 - ys.back());
  for (std::size_t i = 1; i < ys.size(); ++i) cover = std::max(cover, 0.5 * (ys[i] - ys[i - 1]));
  const double hausdorff = std::max(off, cover);
  o.require(rep.status == MinSetsReport::Status::Ok, "empty A0 or B0");
  o.require(hausdorff <= 1e-3, "Hausdorff " + fmt(hausdorff));

  const auto inst = build_instance(8);
  const int n = 10000;
  const auto r5 = verify_section5(inst, n, kSeed, 1e-9);
  o.require(r5.a0_certified == n, "certified " + std::to_string(r5.a0_certified) + " of " + std::to_string(n));
  o.report = {{"a0_samples", rep.a0.size()}, {"hausdorff", hausdorff}, {"section5_certified", r5.a0_certified}};
  if (o.pass) o.detail = "Hausdorff " + fmt(hausdorff) + " over " + std::to_string(rep.a0.size()) +
                         " A0 samples; slice pair " + std::to_string(r5.a0_certified) + "/" + std::to_string(n) +
                         " certified";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double budget_s;  // 0 = no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "section5-reproduction", c1_section5, 10.0},  {2, "pns-failure-surrogate", c2_surrogate, 30.0},
      {3, "law-suite", c3_laws, 60.0},                  {4, "projection-map-nonexpansive", c4_projection_maps, 0},
      {5, "midpoint-iteration", c5_midpoint, 0},        {6, "phi-bound", c6_phi, 0},
      {7, "pns-witness", c7_pns, 0},                    {8, "proximal-subsets", c8_min_sets, 0},
  };

  bool all = true;
  std::vector<std::string> first_reports;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) o.require(false, "runtime " + fmt(secs) + " s over budget");
    first_reports.push_back(o.report.dump());
    all = all && o.pass;
    std::printf("%s %d %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }

  // 9. Rerun everything with the same seeds and compare the serialised reports.
  {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    int same = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      std::string again;
      try {
        again = criteria[i].run().report.dump();
      } catch (const std::exception& e) {
        again = e.what();
      }
      if (again == first_reports[i])
        ++same;
      else
        o.require(false, std::string(criteria[i].name) + " differs");
    }
    // The CLI reports without timestamps.
    auto cli_report = [] {
      const char* argv[] = {"geoprox", "section5", "--dim", "8", "--samples", "2000", "--no-timestamp"};
      std::ostringstream out, err;
      run_cli(7, argv, out, err);
      return out.str();
    };
    o.require(cli_report() == cli_report(), "CLI section5 report differs");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass) o.detail = std::to_string(same) + " reports byte-identical on rerun";
    all = all && o.pass;
    std::printf("%s 9 determinism (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
  }
  return all ? 0 : 1;
}
