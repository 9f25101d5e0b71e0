#include "geoprox/sets.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "geoprox/tree_geometry.hpp"

namespace geoprox {

std::string_view set_type_name(const ConvexSetDescriptor& set) {
  struct {
    std::string_view operator()(const SegmentSet&) const { return "segment"; }
    std::string_view operator()(const BallSet&) const { return "ball"; }
    std::string_view operator()(const PolytopeSet&) const { return "polytope"; }
    std::string_view operator()(const SubtreeHullSet&) const { return "subtree"; }
    std::string_view operator()(const JamesSliceSet&) const { return "james-slice"; }
  } visitor;
  return std::visit(visitor, set);
}

JamesSliceSet make_james_slice(double radius, double first_coord) {
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorKind::InvalidParameter, "slice radius must be positive");
  if (!(first_coord >= 0.0) || first_coord > radius)
    fail(ErrorKind::InvalidParameter, "slice first coordinate must lie in [0, radius]");
  return JamesSliceSet{radius, first_coord};
}

namespace {

bool is_vector_space(const SpaceDescriptor& space) {
  return space.kind() == SpaceKind::Euclidean || space.kind() == SpaceKind::MaxNormSeq;
}

std::vector<std::vector<double>> vertex_coords(const PolytopeSet& poly) {
  std::vector<std::vector<double>> pts;
  pts.reserve(poly.vertices.size());
  for (const auto& v : poly.vertices) pts.push_back(coords_of(v));
  return pts;
}

// ---- Euclidean / hyperbolic segments in closed form ----

SpacePoint project_segment_euclid(const SpaceDescriptor& space, const SpacePoint& a, const SpacePoint& b,
                                  const SpacePoint& x) {
  const auto& ca = coords_of(a);
  const auto& cb = coords_of(b);
  const auto& cx = coords_of(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    num += (cx[i] - ca[i]) * (cb[i] - ca[i]);
    den += (cb[i] - ca[i]) * (cb[i] - ca[i]);
  }
  if (den == 0.0) return a;
  return combine(space, a, b, std::clamp(num / den, 0.0, 1.0));
}

SpacePoint project_segment_hyperbolic(const SpaceDescriptor& space, const SpacePoint& a, const SpacePoint& b,
                                      const SpacePoint& x) {
  const double len = distance(space, a, b);
  if (len == 0.0) return a;
  const auto& pa = std::get<HyperboloidVec>(a).coords;
  const auto& pb = std::get<HyperboloidVec>(b).coords;
  const auto& px = std::get<HyperboloidVec>(x).coords;
  // Unit tangent u at a towards b; the geodesic is cosh(s) a + sinh(s) u.
  const double ip = hyperbolic::minkowski(pa, pb);
  std::array<double, 3> u{pb[0] - ip * pa[0], pb[1] - ip * pa[1], pb[2] - ip * pa[2]};
  const double un = std::sqrt(std::max(0.0, -hyperbolic::minkowski(u, u)));
  for (double& c : u) c /= un;
  // <x, c(s)> = cosh(s) alpha + sinh(s) beta is minimized where tanh(s) = -beta / alpha.
  const double alpha = hyperbolic::minkowski(px, pa);
  const double beta = hyperbolic::minkowski(px, u);
  const double s = std::atanh(std::clamp(-beta / alpha, -1.0 + 1e-16, 1.0 - 1e-16));
  return combine(space, a, b, std::clamp(s / len, 0.0, 1.0));
}

// ---- Subtree hulls ----

SpacePoint project_subtree(const MetricTree& tree, const std::vector<EdgeInterval>& cov, const TreePoint& p) {
  const auto& own = cov[static_cast<std::size_t>(p.edge)];
  if (own.used() && p.offset >= own.lo && p.offset <= own.hi) return p;
  TreePoint best = p;
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](const TreePoint& q) {
    const double d = treegeo::distance(tree, p, q);
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  };
  if (own.used()) consider(TreePoint{p.edge, std::clamp(p.offset, own.lo, own.hi)});
  // Along any other edge the distance to p is affine, so interval endpoints suffice.
  for (int e = 0; e < tree.edge_count(); ++e) {
    const auto& iv = cov[static_cast<std::size_t>(e)];
    if (!iv.used()) continue;
    consider(TreePoint{e, iv.lo});
    consider(TreePoint{e, iv.hi});
  }
  return best;
}

std::vector<TreePoint> tree_generators(const ConvexSetDescriptor& set) {
  if (const auto* s = std::get_if<SegmentSet>(&set)) return {std::get<TreePoint>(s->a), std::get<TreePoint>(s->b)};
  return std::get<SubtreeHullSet>(set).generators;
}

// ---- Max-norm slice ----

// Minimizes |y - t|^2 over the box [lo, hi] intersected with |t| <= rho.
// Separable Lagrangian: t(mu) = clamp(y / (1 + mu), lo, hi), |t(mu)| nonincreasing in mu.
std::optional<std::vector<double>> box_ball_nearest(const std::vector<double>& y, const std::vector<double>& lo,
                                                    const std::vector<double>& hi, double rho) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return std::nullopt;
  auto at = [&](double mu) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::clamp(y[i] / (1.0 + mu), lo[i], hi[i]);
    return t;
  };
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
  };
  const double rho2 = rho * rho;
  std::vector<double> t = at(0.0);
  if (norm2(t) <= rho2) return t;
  if (norm2(lo) > rho2 * (1.0 + 1e-15)) return std::nullopt;
  double mu_lo = 0.0, mu_hi = 1.0;
  while (norm2(at(mu_hi)) > rho2 && mu_hi < 1e300) mu_hi *= 2.0;
  for (int it = 0; it < 200 && mu_hi - mu_lo > 1e-16 * mu_hi; ++it) {
    const double mid = 0.5 * (mu_lo + mu_hi);
    (norm2(at(mid)) > rho2 ? mu_lo : mu_hi) = mid;
  }
  t = at(mu_hi);
  if (norm2(t) > rho2) {
    const double s = rho / std::sqrt(norm2(t));
    for (double& c : t) c *= s;
  }
  return t;
}

SpacePoint project_james(const SpaceDescriptor& space, const JamesSliceSet& js, const SpacePoint& x) {
  const auto& cx = coords_of(x);
  const std::size_t n = cx.size();
  const double c = std::abs(cx[0] - js.first_coord);
  const double rho = std::sqrt(std::max(0.0, 2.0 * js.radius * js.radius - js.first_coord * js.first_coord));
  const std::vector<double> y(cx.begin() + 1, cx.end());

  // Level-set feasibility: is there a slice point within max-norm distance lambda of x?
  auto feasible = [&](double lambda) -> std::optional<std::vector<double>> {
    if (lambda < c) return std::nullopt;
    std::vector<double> lo(n - 1), hi(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      lo[i] = std::max(0.0, y[i] - lambda);
      hi[i] = std::min(js.radius, y[i] + lambda);
    }
    auto t = box_ball_nearest(y, lo, hi, rho);
    if (!t) return std::nullopt;
    double sq = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) sq += (y[i] - (*t)[i]) * (y[i] - (*t)[i]);
    if (c * c + sq > 2.0 * lambda * lambda * (1.0 + 1e-15)) return std::nullopt;
    return t;
  };

  auto assemble = [&](const std::vector<double>& t) {
    std::vector<double> z(n);
    z[0] = js.first_coord;
    for (std::size_t i = 0; i + 1 < n; ++i) z[i + 1] = t[i];
    return with_coords(space, std::move(z));
  };

  if (auto t = feasible(c)) return assemble(*t);
  std::vector<double> zero_tail(n - 1, 0.0);
  double hi = distance(space, x, assemble(zero_tail));
  double lo = c;
  std::optional<std::vector<double>> best = feasible(hi);
  if (!best) best = zero_tail;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (auto t = feasible(mid)) {
      hi = mid;
      best = std::move(t);
    } else {
      lo = mid;
    }
  }
  return assemble(*best);
}

bool james_contains(const JamesSliceSet& js, const std::vector<double>& c, double tol) {
  if (std::abs(c[0] - js.first_coord) > tol) return false;
  double inf = 0.0, sq = 0.0;
  for (double v : c) {
    if (v < -tol) return false;
    inf = std::max(inf, std::abs(v));
    sq += v * v;
  }
  return std::max(inf, std::sqrt(sq) / std::sqrt(2.0)) <= js.radius + tol;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate_set(const SpaceDescriptor& space, const ConvexSetDescriptor& set) {
  auto check_point = [&](const SpacePoint& p) {
    try {
      validate_point(space, p);
    } catch (const GeoError& e) {
      fail(ErrorKind::InvalidSet, std::string(set_type_name(set)) + " member: " + e.what());
    }
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SegmentSet>) {
          check_point(s.a);
          check_point(s.b);
        } else if constexpr (std::is_same_v<T, BallSet>) {
          check_point(s.center);
          if (!(s.radius > 0.0) || !std::isfinite(s.radius)) fail(ErrorKind::InvalidSet, "ball radius must be positive");
        } else if constexpr (std::is_same_v<T, PolytopeSet>) {
          if (!is_vector_space(space))
            fail(ErrorKind::UnsupportedSpace, "polytopes are offered only in Euclidean and max-norm spaces");
          if (s.vertices.empty()) fail(ErrorKind::InvalidSet, "polytope needs at least one vertex");
          for (const auto& v : s.vertices) check_point(v);
        } else if constexpr (std::is_same_v<T, SubtreeHullSet>) {
          if (space.kind() != SpaceKind::MetricTree) fail(ErrorKind::UnsupportedSpace, "subtree hulls need a metric tree");
          if (s.generators.empty()) fail(ErrorKind::InvalidSet, "subtree hull needs at least one generator");
          for (const auto& g : s.generators) check_point(g);
        } else {
          if (space.kind() != SpaceKind::MaxNormSeq) fail(ErrorKind::UnsupportedSpace, "slices live in the max-norm space");
          if (!(s.radius > 0.0) || !(s.first_coord >= 0.0) || s.first_coord > s.radius)
            fail(ErrorKind::InvalidSet, "slice needs radius > 0 and 0 <= first_coord <= radius");
        }
      },
      set);
}

bool can_project(const SpaceDescriptor& space, const ConvexSetDescriptor& set) {
  switch (space.kind()) {
    case SpaceKind::Euclidean:
      return std::holds_alternative<SegmentSet>(set) || std::holds_alternative<BallSet>(set) ||
             std::holds_alternative<PolytopeSet>(set);
    case SpaceKind::HyperbolicPlane:
      return std::holds_alternative<SegmentSet>(set) || std::holds_alternative<BallSet>(set);
    case SpaceKind::MetricTree:
      return std::holds_alternative<SegmentSet>(set) || std::holds_alternative<BallSet>(set) ||
             std::holds_alternative<SubtreeHullSet>(set);
    case SpaceKind::MaxNormSeq:
      return std::holds_alternative<SegmentSet>(set) || std::holds_alternative<JamesSliceSet>(set);
  }
  return false;
}

SpacePoint project(const SpaceDescriptor& space, const ConvexSetDescriptor& set, const SpacePoint& x, double tol) {
  validate_set(space, set);
  try {
    validate_point(space, x);
  } catch (const GeoError& e) {
    fail(ErrorKind::InvalidSet, std::string("projected point: ") + e.what());
  }
  if (!can_project(space, set))
    fail(ErrorKind::UnsupportedSpace,
         "projection onto " + std::string(set_type_name(set)) + " is not offered in " + space.name());

  if (const auto* seg = std::get_if<SegmentSet>(&set)) {
    switch (space.kind()) {
      case SpaceKind::Euclidean: return project_segment_euclid(space, seg->a, seg->b, x);
      case SpaceKind::HyperbolicPlane: return project_segment_hyperbolic(space, seg->a, seg->b, x);
      case SpaceKind::MetricTree: break;
      case SpaceKind::MaxNormSeq: return project_segment_search(space, seg->a, seg->b, x);
    }
  }
  if (const auto* ball = std::get_if<BallSet>(&set)) {
    const double d = distance(space, ball->center, x);
    if (d <= ball->radius) return x;
    return combine(space, ball->center, x, ball->radius / d);
  }
  if (const auto* poly = std::get_if<PolytopeSet>(&set)) {
    auto hp = nearest_in_hull(vertex_coords(*poly), coords_of(x), tol);
    return with_coords(space, std::move(hp.point));
  }
  if (const auto* js = std::get_if<JamesSliceSet>(&set)) return project_james(space, *js, x);

  const auto& tree = space.tree();
  return project_subtree(tree, subtree_coverage(tree, tree_generators(set)), std::get<TreePoint>(x));
}

bool contains(const SpaceDescriptor& space, const ConvexSetDescriptor& set, const SpacePoint& p, double tol) {
  validate_set(space, set);
  try {
    validate_point(space, p);
  } catch (const GeoError& e) {
    fail(ErrorKind::InvalidSet, std::string("membership query: ") + e.what());
  }
  if (const auto* ball = std::get_if<BallSet>(&set)) return distance(space, ball->center, p) <= ball->radius + tol;
  if (const auto* js = std::get_if<JamesSliceSet>(&set)) return james_contains(*js, coords_of(p), tol);
  if (const auto* poly = std::get_if<PolytopeSet>(&set)) {
    // Convex-combination feasibility, checked in coordinates.
    const auto& c = coords_of(p);
    const auto hp = nearest_in_hull(vertex_coords(*poly), c, tol);
    double sq = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) sq += (c[i] - hp.point[i]) * (c[i] - hp.point[i]);
    return std::sqrt(sq) <= tol;
  }
  return distance(space, p, project(space, set, p, tol)) <= tol;
}

SpacePoint project_segment_search(const SpaceDescriptor& space, const SpacePoint& a, const SpacePoint& b,
                                  const SpacePoint& x) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return distance(space, x, combine(space, a, b, t)); };
  double lo = 0.0, hi = 1.0;
  double m1 = hi - inv_phi * (hi - lo), m2 = lo + inv_phi * (hi - lo);
  double f1 = f(m1), f2 = f(m2);
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - inv_phi * (hi - lo);
      f1 = f(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + inv_phi * (hi - lo);
      f2 = f(m2);
    }
  }
  // Endpoints are not interior probes; compare them explicitly.
  double best_t = 0.5 * (lo + hi), best = f(best_t);
  for (double t : {0.0, 1.0})
    if (const double v = f(t); v < best) {
      best = v;
      best_t = t;
    }
  return combine(space, a, b, best_t);
}

HullProjection nearest_in_hull(const std::vector<std::vector<double>>& points, const std::vector<double>& x,
                               double tol, int max_iter) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const std::size_t k = points.size();
  if (k == 0) fail(ErrorKind::InvalidSet, "empty point set");
  const auto d = static_cast<Eigen::Index>(x.size());
  MatrixXd q(d, static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    if (points[j].size() != x.size()) fail(ErrorKind::InvalidSet, "vertex dimension mismatch");
    for (Eigen::Index i = 0; i < d; ++i) q(i, static_cast<Eigen::Index>(j)) = points[j][static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
  }
  const VectorXd sq = q.colwise().squaredNorm();
  const double scale = std::max(1.0, sq.maxCoeff());
  const double gap_tol = std::min(tol, 1e-12) * scale;
  const double zero_w = 1e-14;

  Eigen::Index j0;
  sq.minCoeff(&j0);
  std::vector<Eigen::Index> active{j0};
  std::vector<double> lambda{1.0};
  VectorXd w = q.col(j0);

  auto affine_minimizer = [&](const std::vector<Eigen::Index>& s) {
    const auto m = static_cast<Eigen::Index>(s.size());
    MatrixXd sys = MatrixXd::Zero(m + 1, m + 1);
    VectorXd rhs = VectorXd::Zero(m + 1);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) sys(a, b) = q.col(s[static_cast<std::size_t>(a)]).dot(q.col(s[static_cast<std::size_t>(b)]));
      sys(a, m) = 1.0;
      sys(m, a) = 1.0;
    }
    rhs(m) = 1.0;
    const VectorXd sol = sys.completeOrthogonalDecomposition().solve(rhs);
    return VectorXd(sol.head(m));
  };

  HullProjection out;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const VectorXd ip = q.transpose() * w;
    Eigen::Index j;
    ip.minCoeff(&j);
    out.gap = w.squaredNorm() - ip(j);
    if (out.gap <= gap_tol) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.push_back(0.0);

    for (;;) {
      const VectorXd mu = affine_minimizer(active);
      if ((mu.array() > zero_w).all()) {
        for (std::size_t a = 0; a < active.size(); ++a) lambda[a] = mu(static_cast<Eigen::Index>(a));
        break;
      }
      double theta = 1.0;
      for (std::size_t a = 0; a < active.size(); ++a) {
        const double m = mu(static_cast<Eigen::Index>(a));
        if (m <= zero_w && lambda[a] - m > 0.0) theta = std::min(theta, lambda[a] / (lambda[a] - m));
      }
      for (std::size_t a = 0; a < active.size(); ++a)
        lambda[a] = (1.0 - theta) * lambda[a] + theta * mu(static_cast<Eigen::Index>(a));
      std::vector<Eigen::Index> keep_idx;
      std::vector<double> keep_w;
      for (std::size_t a = 0; a < active.size(); ++a)
        if (lambda[a] > zero_w) {
          keep_idx.push_back(active[a]);
          keep_w.push_back(lambda[a]);
        }
      if (keep_idx.empty()) {
        keep_idx.push_back(active.back());
        keep_w.push_back(1.0);
      }
      double total = 0.0;
      for (double v : keep_w) total += v;
      for (double& v : keep_w) v /= total;
      active = std::move(keep_idx);
      lambda = std::move(keep_w);
      if (active.size() == 1) break;
    }
    w.setZero();
    for (std::size_t a = 0; a < active.size(); ++a) w += lambda[a] * q.col(active[a]);
  }
  if (iter >= max_iter) fail(ErrorKind::NoConvergence, "nearest-point iteration budget exhausted");

  out.iterations = iter;
  out.weights.assign(k, 0.0);
  for (std::size_t a = 0; a < active.size(); ++a) out.weights[static_cast<std::size_t>(active[a])] = lambda[a];
  out.point.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.point[i] = x[i] + w(static_cast<Eigen::Index>(i));
  return out;
}

std::vector<EdgeInterval> subtree_coverage(const MetricTree& tree, const std::vector<TreePoint>& generators) {
  std::vector<EdgeInterval> cov(static_cast<std::size_t>(tree.edge_count()));
  auto mark = [&](int e, double a, double b) {
    auto& iv = cov[static_cast<std::size_t>(e)];
    const double lo = std::min(a, b), hi = std::max(a, b);
    if (!iv.used()) {
      iv = {lo, hi};
    } else {
      iv.lo = std::min(iv.lo, lo);
      iv.hi = std::max(iv.hi, hi);
    }
  };
  const TreePoint& root = generators.front();
  mark(root.edge, root.offset, root.offset);
  for (std::size_t i = 1; i < generators.size(); ++i)
    for (const auto& pc : treegeo::path(tree, root, generators[i])) mark(pc.edge, pc.from, pc.to);
  return cov;
}

SpacePoint sample_in_set(const SpaceDescriptor& space, const ConvexSetDescriptor& set, Rng& rng) {
  if (const auto* seg = std::get_if<SegmentSet>(&set)) return combine(space, seg->a, seg->b, uniform(rng));
  if (const auto* ball = std::get_if<BallSet>(&set)) return random_point_within(space, ball->center, ball->radius, rng);
  if (const auto* poly = std::get_if<PolytopeSet>(&set)) {
    const int n = static_cast<int>(poly->vertices.size());
    if (n == 1 || uniform(rng) < 0.125) return poly->vertices[static_cast<std::size_t>(uniform_index(rng, n))];
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& v : w) total += (v = -std::log(1.0 - uniform(rng)));
    std::vector<double> z(coords_of(poly->vertices.front()).size(), 0.0);
    for (int j = 0; j < n; ++j) {
      const auto& c = coords_of(poly->vertices[static_cast<std::size_t>(j)]);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += w[static_cast<std::size_t>(j)] / total * c[i];
    }
    return with_coords(space, std::move(z));
  }
  if (const auto* js = std::get_if<JamesSliceSet>(&set)) {
    const int n = space.dim();
    std::vector<double> z(static_cast<std::size_t>(n), 0.0);
    z[0] = js->first_coord;
    if (n == 1) return with_coords(space, std::move(z));
    const double rho = std::sqrt(std::max(0.0, 2.0 * js->radius * js->radius - js->first_coord * js->first_coord));
    std::vector<double> dir(static_cast<std::size_t>(n - 1), 0.0);
    switch (uniform_index(rng, 4)) {
      case 0:  // orthant direction
        for (double& v : dir) v = uniform(rng);
        break;
      case 1:  // single axis
        dir[static_cast<std::size_t>(uniform_index(rng, n - 1))] = 1.0;
        break;
      case 2: {  // equal weights on a random subset
        const int k = 1 + uniform_index(rng, n - 1);
        std::vector<int> idx(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i) idx[static_cast<std::size_t>(i)] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (int i = 0; i < k; ++i) dir[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1.0;
        break;
      }
      default:
        return with_coords(space, std::move(z));
    }
    double inf = 0.0, sq = 0.0;
    for (double v : dir) {
      inf = std::max(inf, v);
      sq += v * v;
    }
    if (inf == 0.0) return with_coords(space, std::move(z));
    const double s_max = std::min(js->radius / inf, rho / std::sqrt(sq));
    // Half of the draws land on the boundary, where extreme behaviour lives.
    const double s = uniform(rng) < 0.5 ? s_max : s_max * uniform(rng);
    for (int i = 1; i < n; ++i) z[static_cast<std::size_t>(i)] = s * dir[static_cast<std::size_t>(i - 1)];
    return with_coords(space, std::move(z));
  }
  const auto& tree = space.tree();
  const auto cov = subtree_coverage(tree, tree_generators(set));
  double total = 0.0;
  for (const auto& iv : cov)
    if (iv.used()) total += iv.hi - iv.lo;
  if (total == 0.0) {
    for (int e = 0; e < tree.edge_count(); ++e)
      if (cov[static_cast<std::size_t>(e)].used()) return TreePoint{e, cov[static_cast<std::size_t>(e)].lo};
  }
  double pick = uniform(rng, 0.0, total);
  for (int e = 0; e < tree.edge_count(); ++e) {
    const auto& iv = cov[static_cast<std::size_t>(e)];
    if (!iv.used()) continue;
    const double len = iv.hi - iv.lo;
    if (pick <= len) return TreePoint{e, iv.lo + pick};
    pick -= len;
  }
  for (int e = tree.edge_count() - 1; e >= 0; --e)
    if (cov[static_cast<std::size_t>(e)].used()) return TreePoint{e, cov[static_cast<std::size_t>(e)].hi};
  return tree_generators(set).front();
}

std::vector<SpacePoint> extreme_candidates(const ConvexSetDescriptor& set) {
  if (const auto* seg = std::get_if<SegmentSet>(&set)) return {seg->a, seg->b};
  if (const auto* poly = std::get_if<PolytopeSet>(&set)) return poly->vertices;
  if (const auto* sub = std::get_if<SubtreeHullSet>(&set)) return {sub->generators.begin(), sub->generators.end()};
  return {};
}

}  // namespace geoprox
