#include "geoprox/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "geoprox/errors.hpp"
#include "geoprox/sampling.hpp"

namespace geoprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_vector_kind(const SpaceDescriptor& space) {
  return space.kind() == SpaceKind::Euclidean || space.kind() == SpaceKind::MaxNormSeq;
}

// Segment or polytope in the Euclidean space as a vertex list.
std::optional<std::vector<std::vector<double>>> euclid_vertices(const SpaceDescriptor& space,
                                                                const ConvexSetDescriptor& set) {
  if (space.kind() != SpaceKind::Euclidean) return std::nullopt;
  if (const auto* s = std::get_if<SegmentSet>(&set)) return std::vector{coords_of(s->a), coords_of(s->b)};
  if (const auto* p = std::get_if<PolytopeSet>(&set)) {
    std::vector<std::vector<double>> out;
    for (const auto& v : p->vertices) out.push_back(coords_of(v));
    return out;
  }
  return std::nullopt;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double& arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-12) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  arg = 0.5 * (a + b);
  double best = f(arg);
  for (double t : {lo, hi}) {
    const double v = f(t);
    if (v < best) {
      best = v;
      arg = t;
    }
  }
  return best;
}

struct Attained {
  double value;
  PointPair arg;
};

// Structured dist(A, B); nullopt when no exact method applies.
std::optional<Attained> exact_dist(const PairDescriptor& pair) {
  const auto& sp = pair.space;
  const auto& A = pair.a;
  const auto& B = pair.b;

  if (const auto* ja = std::get_if<JamesSliceSet>(&A)) {
    if (const auto* jb = std::get_if<JamesSliceSet>(&B)) {
      // Both slices contain the zero tail, and the first coordinates alone
      // already separate them by |fa - fb|.
      std::vector<double> a(static_cast<std::size_t>(sp.dim()), 0.0), b = a;
      a[0] = ja->first_coord;
      b[0] = jb->first_coord;
      return Attained{std::abs(ja->first_coord - jb->first_coord), {maxnorm(a), maxnorm(b)}};
    }
  }

  const auto va = euclid_vertices(sp, A);
  const auto vb = euclid_vertices(sp, B);
  if (va && vb) {
    std::vector<std::vector<double>> diff;
    for (const auto& p : *va)
      for (const auto& q : *vb) {
        std::vector<double> d(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) d[k] = p[k] - q[k];
        diff.push_back(std::move(d));
      }
    const auto h = nearest_in_hull(diff, std::vector<double>(va->front().size(), 0.0), 1e-14);
    std::vector<double> a(va->front().size(), 0.0), b = a;
    for (std::size_t i = 0; i < va->size(); ++i)
      for (std::size_t j = 0; j < vb->size(); ++j) {
        const double w = h.weights[i * vb->size() + j];
        if (w == 0.0) continue;
        for (std::size_t k = 0; k < a.size(); ++k) {
          a[k] += w * (*va)[i][k];
          b[k] += w * (*vb)[j][k];
        }
      }
    const SpacePoint pa = euclid(a), pb = euclid(b);
    return Attained{distance(sp, pa, pb), {pa, pb}};
  }

  // A ball against a set we can project onto (or another ball).
  auto ball_case = [&](const BallSet& ball, const ConvexSetDescriptor& other, bool ball_first) -> std::optional<Attained> {
    SpacePoint near;
    double dc;
    if (const auto* ob = std::get_if<BallSet>(&other)) {
      const double dcc = distance(sp, ball.center, ob->center);
      if (dcc <= ob->radius) {
        near = ball.center;
      } else {
        near = combine(sp, ob->center, ball.center, ob->radius / dcc);
      }
      dc = distance(sp, ball.center, near);
    } else if (can_project(sp, other)) {
      near = project(sp, other, ball.center);
      dc = distance(sp, ball.center, near);
    } else {
      return std::nullopt;
    }
    SpacePoint on_ball = dc <= ball.radius ? near : combine(sp, ball.center, near, ball.radius / dc);
    const double value = distance(sp, on_ball, near);
    if (ball_first) return Attained{value, {on_ball, near}};
    return Attained{value, {near, on_ball}};
  };
  if (sp.kind() != SpaceKind::MaxNormSeq) {
    if (const auto* ba = std::get_if<BallSet>(&A)) return ball_case(*ba, B, true);
    if (const auto* bb = std::get_if<BallSet>(&B)) return ball_case(*bb, A, false);
  }

  if (sp.kind() == SpaceKind::MetricTree) {
    // Closest points are gates, which sit at ends of covered edge intervals.
    const auto& tree = sp.tree();
    auto interval_ends = [&](const ConvexSetDescriptor& set) {
      std::vector<TreePoint> gens;
      for (const auto& p : extreme_candidates(set)) gens.push_back(std::get<TreePoint>(p));
      std::vector<SpacePoint> out;
      const auto cov = subtree_coverage(tree, gens);
      for (int e = 0; e < tree.edge_count(); ++e) {
        if (!cov[static_cast<std::size_t>(e)].used()) continue;
        out.push_back(TreePoint{e, cov[static_cast<std::size_t>(e)].lo});
        out.push_back(TreePoint{e, cov[static_cast<std::size_t>(e)].hi});
      }
      for (const auto& g : gens) out.push_back(g);
      return out;
    };
    Attained best{kInf, {}};
    for (const auto& a : interval_ends(A)) {
      const auto b = project(sp, B, a);
      const double d = distance(sp, a, b);
      if (d < best.value) best = {d, {a, b}};
    }
    for (const auto& b : interval_ends(B)) {
      const auto a = project(sp, A, b);
      const double d = distance(sp, a, b);
      if (d < best.value) best = {d, {a, b}};
    }
    return best;
  }

  // A segment against a projectable set in a Busemann space: s -> d(c(s), C) is convex.
  if (sp.is_busemann()) {
    auto seg_case = [&](const SegmentSet& seg, const ConvexSetDescriptor& other, bool seg_first)
        -> std::optional<Attained> {
      if (!can_project(sp, other)) return std::nullopt;
      auto f = [&](double s) {
        const auto c = combine(sp, seg.a, seg.b, s);
        return distance(sp, c, project(sp, other, c));
      };
      double s = 0.0;
      golden_min(f, 0.0, 1.0, s);
      const auto c = combine(sp, seg.a, seg.b, s);
      const auto q = project(sp, other, c);
      const double value = distance(sp, c, q);
      if (seg_first) return Attained{value, {c, q}};
      return Attained{value, {q, c}};
    };
    if (const auto* sa = std::get_if<SegmentSet>(&A))
      if (auto r = seg_case(*sa, B, true)) return r;
    if (const auto* sb = std::get_if<SegmentSet>(&B))
      if (auto r = seg_case(*sb, A, false)) return r;
  }
  return std::nullopt;
}

// Point of the ball farthest from x; the ray from x through the center, extended.
SpacePoint ball_far_point(const SpaceDescriptor& sp, const SpacePoint& x, const BallSet& ball) {
  const double dc = distance(sp, x, ball.center);
  if (dc <= tol::kAbsFloor) {
    Rng rng = sample_rng(0, stream_id("ball-far"), 0);
    return random_point_on_sphere(sp, ball.center, ball.radius, rng);
  }
  return ray_point(sp, x, ball.center, dc + ball.radius);
}

// Slice farthest point: attained candidates plus a certified upper bound.
FarthestResult james_farthest(const SpaceDescriptor& sp, const std::vector<double>& x, const JamesSliceSet& js) {
  const std::size_t n = x.size();
  const double f = js.first_coord;
  const double rho = std::sqrt(std::max(0.0, 2.0 * js.radius * js.radius - f * f));
  const double m = std::min(js.radius, rho);

  std::vector<double> cand(n, 0.0);
  cand[0] = f;
  FarthestResult best{distance(sp, maxnorm(x), maxnorm(cand)), false, maxnorm(cand)};
  for (std::size_t i = 1; i < n; ++i) {
    cand[i] = m;
    const double d = distance(sp, maxnorm(x), maxnorm(cand));
    if (d > best.value) best = {d, false, maxnorm(cand)};
    cand[i] = 0.0;
  }

  double inf_part = std::abs(x[0] - f);
  double tail_sq = 0.0;
  bool tail_nonneg = true;
  for (std::size_t i = 1; i < n; ++i) {
    inf_part = std::max({inf_part, std::abs(x[i]), std::abs(x[i] - m)});
    tail_sq += x[i] * x[i];
    tail_nonneg = tail_nonneg && x[i] >= 0.0;
  }
  const double d1 = x[0] - f;
  const double l2_sq = tail_nonneg ? d1 * d1 + tail_sq + rho * rho
                                   : d1 * d1 + std::pow(std::sqrt(tail_sq) + rho, 2);
  const double upper = std::max(inf_part, std::sqrt(l2_sq) / std::sqrt(2.0));
  best.exact = upper <= best.value + 1e-12;
  return best;
}

void note_pair(std::vector<PointPair>& out, const SpacePoint& p, const SpacePoint& q) { out.emplace_back(p, q); }

}  // namespace

void validate_pair(const PairDescriptor& pair) {
  validate_set(pair.space, pair.a);
  validate_set(pair.space, pair.b);
  if (pair.sampler.n_samples < 0) fail(ErrorKind::InvalidParameter, "n_samples must be nonnegative");
}

FarthestResult farthest_point(const SpaceDescriptor& space, const SpacePoint& x, const ConvexSetDescriptor& set,
                              const Sampler& sampler) {
  validate_point(space, x);
  const auto cands = extreme_candidates(set);
  // d(x, .) is convex along geodesics in Busemann and normed spaces, so its sup
  // over a hull is attained at a generator.
  if (!cands.empty() && (space.is_busemann() || is_vector_kind(space))) {
    FarthestResult best{-1.0, true, cands.front()};
    for (const auto& c : cands) {
      const double d = distance(space, x, c);
      if (d > best.value) best = {d, true, c};
    }
    return best;
  }
  if (const auto* ball = std::get_if<BallSet>(&set)) {
    if (space.kind() == SpaceKind::Euclidean || space.kind() == SpaceKind::HyperbolicPlane) {
      const auto w = ball_far_point(space, x, *ball);
      return {distance(space, x, ball->center) + ball->radius, true, w};
    }
  }
  FarthestResult best{-1.0, false, x};
  if (const auto* js = std::get_if<JamesSliceSet>(&set)) {
    best = james_farthest(space, coords_of(x), *js);
    if (best.exact) return best;
  }
  const auto stream = stream_id("farthest");
  for (int i = 0; i < sampler.n_samples; ++i) {
    Rng rng = sample_rng(sampler.seed, stream, static_cast<std::uint64_t>(i));
    const auto s = sample_in_set(space, set, rng);
    const double d = distance(space, x, s);
    if (d > best.value) best = {d, false, s};
  }
  if (best.value < 0.0) {
    // Nothing sampled: fall back to one representative point.
    Rng rng = sample_rng(sampler.seed, stream, 0);
    const auto s = sample_in_set(space, set, rng);
    best = {distance(space, x, s), false, s};
  }
  return best;
}

double farthest(const SpaceDescriptor& space, const SpacePoint& x, const ConvexSetDescriptor& set,
                const Sampler& sampler) {
  return farthest_point(space, x, set, sampler).value;
}

double nearest_distance(const SpaceDescriptor& space, const SpacePoint& x, const ConvexSetDescriptor& set,
                        const Sampler& sampler) {
  if (can_project(space, set)) return distance(space, x, project(space, set, x));
  double best = kInf;
  const auto stream = stream_id("nearest");
  for (int i = 0; i < std::max(1, sampler.n_samples); ++i) {
    Rng rng = sample_rng(sampler.seed, stream, static_cast<std::uint64_t>(i));
    best = std::min(best, distance(space, x, sample_in_set(space, set, rng)));
  }
  return best;
}

ExtentReport pair_extents(const PairDescriptor& pair) {
  validate_pair(pair);
  const auto& sp = pair.space;
  ExtentReport r;

  // dist
  if (auto ex = exact_dist(pair)) {
    r.dist_lower = r.dist_upper = ex->value;
    r.arg_dist = ex->arg;
    r.dist_exact = true;
  } else {
    const bool pa = can_project(sp, pair.a), pb = can_project(sp, pair.b);
    const auto stream = stream_id("extents-dist");
    double best = kInf;
    for (int i = 0; i < std::max(1, pair.sampler.n_samples); ++i) {
      Rng rng = sample_rng(pair.sampler.seed, stream, static_cast<std::uint64_t>(i));
      auto a = sample_in_set(sp, pair.a, rng);
      auto b = sample_in_set(sp, pair.b, rng);
      if (pb) b = project(sp, pair.b, a);
      if (pa && pb) {
        for (int k = 0; k < 50; ++k) {
          a = project(sp, pair.a, b);
          b = project(sp, pair.b, a);
        }
      }
      const double d = distance(sp, a, b);
      if (d < best) {
        best = d;
        r.arg_dist = {a, b};
      }
    }
    r.dist_lower = r.dist_upper = best;
    r.samples = std::max(1, pair.sampler.n_samples);
  }

  // diam
  const auto ca = extreme_candidates(pair.a);
  const auto cb = extreme_candidates(pair.b);
  const auto* ja = std::get_if<JamesSliceSet>(&pair.a);
  const auto* jb = std::get_if<JamesSliceSet>(&pair.b);
  const auto* ba = std::get_if<BallSet>(&pair.a);
  const auto* bb = std::get_if<BallSet>(&pair.b);
  const bool convex_dist = sp.is_busemann() || is_vector_kind(sp);
  const bool complete_geodesics = sp.kind() == SpaceKind::Euclidean || sp.kind() == SpaceKind::HyperbolicPlane;

  if (ja && jb) {
    const std::size_t n = static_cast<std::size_t>(sp.dim());
    auto extremes = [&](const JamesSliceSet& js) {
      const double rho = std::sqrt(std::max(0.0, 2.0 * js.radius * js.radius - js.first_coord * js.first_coord));
      const double m = std::min(js.radius, rho);
      std::vector<std::vector<double>> out;
      std::vector<double> v(n, 0.0);
      v[0] = js.first_coord;
      out.push_back(v);
      for (std::size_t i = 1; i < n; ++i) {
        v[i] = m;
        out.push_back(v);
        v[i] = 0.0;
      }
      return std::pair{out, std::pair{rho, m}};
    };
    const auto [ea, pa] = extremes(*ja);
    const auto [eb, pb] = extremes(*jb);
    // Ties go to a pair with both tails nonzero, the form e1 + e_n, 2e1 + 2e_m.
    double best = -1.0;
    bool best_tails = false;
    for (std::size_t i = 0; i < ea.size(); ++i)
      for (std::size_t j = 0; j < eb.size(); ++j) {
        const double d = distance(sp, maxnorm(ea[i]), maxnorm(eb[j]));
        const bool tails = i > 0 && j > 0;
        if (d > best + 1e-12 || (d >= best - 1e-12 && tails && !best_tails)) {
          best = std::max(best, d);
          best_tails = tails;
          r.arg_diam = {maxnorm(ea[i]), maxnorm(eb[j])};
        }
      }
    // sup ||a - b||_inf and sup ||a - b||_2 / sqrt 2 bounded separately.
    const double df = std::abs(ja->first_coord - jb->first_coord);
    const double inf_part = n > 1 ? std::max({df, pa.second, pb.second}) : df;
    const double l2 = std::sqrt(df * df + pa.first * pa.first + pb.first * pb.first) / std::sqrt(2.0);
    r.diam_lower = best;
    r.diam_upper = std::max({inf_part, l2, best});
    r.diam_exact = r.diam_upper <= best + 1e-12;
  } else if (!ca.empty() && !cb.empty() && convex_dist) {
    double best = -1.0;
    for (const auto& a : ca)
      for (const auto& b : cb) {
        const double d = distance(sp, a, b);
        if (d > best) {
          best = d;
          r.arg_diam = {a, b};
        }
      }
    r.diam_lower = r.diam_upper = best;
    r.diam_exact = true;
  } else if (complete_geodesics && (ba || bb) && (ba ? (bb || !cb.empty()) : !ca.empty())) {
    if (ba && bb) {
      const double dc = distance(sp, ba->center, bb->center);
      SpacePoint a, b;
      if (dc <= tol::kAbsFloor) {
        Rng rng = sample_rng(0, stream_id("ball-far"), 0);
        a = random_point_on_sphere(sp, ba->center, ba->radius, rng);
        b = ray_point(sp, a, bb->center, ba->radius + bb->radius);
      } else {
        a = ray_point(sp, bb->center, ba->center, dc + ba->radius);
        b = ray_point(sp, a, bb->center, dc + ba->radius + bb->radius);
      }
      r.diam_lower = r.diam_upper = dc + ba->radius + bb->radius;
      r.arg_diam = {a, b};
    } else {
      const BallSet& ball = ba ? *ba : *bb;
      const auto& cands = ba ? cb : ca;
      double best = -1.0;
      for (const auto& c : cands) {
        const auto w = farthest_point(sp, c, ball);
        if (w.value > best) {
          best = w.value;
          r.arg_diam = ba ? PointPair{w.witness, c} : PointPair{c, w.witness};
        }
      }
      r.diam_lower = r.diam_upper = best;
    }
    r.diam_exact = true;
  } else {
    const auto stream = stream_id("extents-diam");
    double best = -1.0;
    auto consider = [&](const SpacePoint& a, const SpacePoint& b) {
      const double d = distance(sp, a, b);
      if (d > best) {
        best = d;
        r.arg_diam = {a, b};
      }
    };
    for (const auto& a : ca)
      for (const auto& b : cb) consider(a, b);
    for (int i = 0; i < std::max(1, pair.sampler.n_samples); ++i) {
      Rng rng = sample_rng(pair.sampler.seed, stream, static_cast<std::uint64_t>(i));
      const auto a = sample_in_set(sp, pair.a, rng);
      const auto b = sample_in_set(sp, pair.b, rng);
      consider(a, b);
    }
    r.diam_lower = best;
    r.diam_upper = best;
    // Triangle inequality gives a certified bound for two balls.
    if (ba && bb) r.diam_upper = distance(sp, ba->center, bb->center) + ba->radius + bb->radius;
    r.samples = std::max(r.samples, std::max(1, pair.sampler.n_samples));
  }
  return r;
}

MinSetsReport min_sets(const PairDescriptor& pair, double tol) {
  const auto& sp = pair.space;
  const auto ext = pair_extents(pair);
  MinSetsReport rep;
  rep.dist = ext.dist_upper;
  rep.nonempty_expected = sp.is_busemann();
  const bool pa = can_project(sp, pair.a), pb = can_project(sp, pair.b);
  const auto stream = stream_id("min-sets");
  const int n = pair.sampler.n_samples;

  for (int i = 0; i < n; ++i) {
    Rng rng = sample_rng(pair.sampler.seed, stream, static_cast<std::uint64_t>(i));
    ++rep.attempts;
    if (pa && pb) {
      // Alternating projections from a start in A (even i) or in B (odd i).
      SpacePoint a = i % 2 == 0 ? sample_in_set(sp, pair.a, rng) : project(sp, pair.a, sample_in_set(sp, pair.b, rng));
      for (int k = 0; k < 200; ++k) {
        const auto b = project(sp, pair.b, a);
        if (distance(sp, a, b) <= rep.dist + tol) {
          note_pair(rep.a0, a, b);
          const auto a2 = project(sp, pair.a, b);
          if (distance(sp, a2, b) <= rep.dist + tol) note_pair(rep.b0, b, a2);
          break;
        }
        a = project(sp, pair.a, b);
      }
    } else {
      const auto a = sample_in_set(sp, pair.a, rng);
      const auto b = sample_in_set(sp, pair.b, rng);
      if (pb) {
        const auto q = project(sp, pair.b, a);
        if (distance(sp, a, q) <= rep.dist + tol) note_pair(rep.a0, a, q);
      }
      if (pa) {
        const auto q = project(sp, pair.a, b);
        if (distance(sp, b, q) <= rep.dist + tol) note_pair(rep.b0, b, q);
      }
      if (!pa && !pb && distance(sp, a, b) <= rep.dist + tol) {
        note_pair(rep.a0, a, b);
        note_pair(rep.b0, b, a);
      }
    }
  }
  if (ext.dist_exact && n > 0 && (rep.a0.empty() || rep.b0.empty())) {
    // The extent witness itself lies in A0 x B0.
    if (rep.a0.empty()) note_pair(rep.a0, ext.arg_dist.first, ext.arg_dist.second);
    if (rep.b0.empty()) note_pair(rep.b0, ext.arg_dist.second, ext.arg_dist.first);
  }
  if (rep.a0.empty() || rep.b0.empty()) rep.status = MinSetsReport::Status::EmptyWitness;
  return rep;
}

ProximalityReport is_proximal(const PairDescriptor& pair, double tol) {
  const auto& sp = pair.space;
  const auto ext = pair_extents(pair);
  ProximalityReport rep;
  rep.dist = ext.dist_upper;
  Sampler inner{pair.sampler.n_samples, pair.sampler.seed};

  auto check_side = [&](const ConvexSetDescriptor& from, const ConvexSetDescriptor& to, int& checked,
                        const char* stream_name) {
    auto test = [&](const SpacePoint& p) {
      ++checked;
      if (nearest_distance(sp, p, to, inner) > rep.dist + tol) {
        rep.proximal = false;
        rep.counterexample = p;
        return false;
      }
      return true;
    };
    for (const auto& c : extreme_candidates(from))
      if (!test(c)) return false;
    const auto stream = stream_id(stream_name);
    for (int i = 0; i < pair.sampler.n_samples; ++i) {
      Rng rng = sample_rng(pair.sampler.seed, stream, static_cast<std::uint64_t>(i));
      if (!test(sample_in_set(sp, from, rng))) return false;
    }
    return true;
  };
  if (check_side(pair.a, pair.b, rep.checked_a, "proximal-a")) check_side(pair.b, pair.a, rep.checked_b, "proximal-b");
  return rep;
}

PnsWitness pns_witness(const SpaceDescriptor& space, const ConvexSetDescriptor& h1, const ConvexSetDescriptor& h2,
                       const SpacePoint& x, const SpacePoint& y, const ModulusSpec& modulus_spec, double tol,
                       const Sampler& sampler) {
  if (!space.is_uniformly_convex()) fail(ErrorKind::UnsupportedSpace, "space is not uniformly convex: " + space.name());
  validate_set(space, h1);
  validate_set(space, h2);
  validate_point(space, x);
  validate_point(space, y);
  if (!contains(space, h1, x, 1e-7) || !contains(space, h1, y, 1e-7))
    fail(ErrorKind::InvalidParameter, "x and y must lie in H1");
  if (distance(space, x, y) <= tol) fail(ErrorKind::DegenerateInput, "x and y coincide");
  if (!can_project(space, h2)) fail(ErrorKind::UnsupportedSpace, "no projection onto H2 in " + space.name());

  PnsWitness w;
  w.x_partner = project(space, h2, x);
  w.y_partner = project(space, h2, y);
  w.m1 = midpoint(space, x, y);
  w.m2 = midpoint(space, w.x_partner, w.y_partner);
  w.eps = std::min(distance(space, x, y), distance(space, w.x_partner, w.y_partner));
  if (w.eps <= tol) fail(ErrorKind::DegenerateInput, "partners of x and y coincide");

  const auto ext = pair_extents(PairDescriptor{space, h1, h2, sampler});
  w.diam = ext.diam_upper;
  if (w.diam <= tol) fail(ErrorKind::DegenerateInput, "H1 and H2 have zero diameter");
  w.alpha = 1.0 - modulus(modulus_spec, space, w.diam, std::min(2.0, w.eps / w.diam));
  w.delta_m1_h2 = farthest(space, w.m1, h2, sampler);
  w.delta_m2_h1 = farthest(space, w.m2, h1, sampler);
  return w;
}

}  // namespace geoprox
