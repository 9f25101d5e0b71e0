#include "geoprox/laws.hpp"

#include <algorithm>
#include <cmath>

#include "geoprox/parallel.hpp"
#include "geoprox/sampling.hpp"
#include "geoprox/sets.hpp"

namespace geoprox {

std::string_view law_name(LawId law) {
  switch (law) {
    case LawId::GeodesicParam: return "geodesic-param";
    case LawId::ConvexMetric: return "convex-metric";
    case LawId::Busemann: return "busemann";
    case LawId::Cat0FourPoint: return "cat0-four-point";
    case LawId::ComparisonTriangle: return "comparison-triangle";
    case LawId::ParallelTransfer: return "parallel-transfer";
    case LawId::StrictConvexity: return "strict-convexity";
    case LawId::ProjectionNonexpansive: return "projection-nonexpansive";
    case LawId::ProjectionRay: return "projection-ray";
  }
  return "unknown";
}

std::optional<LawId> parse_law(std::string_view name) {
  for (LawId law : kAllLaws)
    if (law_name(law) == name) return law;
  return std::nullopt;
}

namespace {

double norm_for(double scale, double tol) {
  const double floor = tol > 0.0 ? tol::kAbsFloor / tol : 1.0;
  return std::max(scale, floor);
}

}  // namespace

LawReport summarize(std::string law, std::string space, std::uint64_t seed, double tol,
                    const std::vector<SampleOutcome>& outcomes) {
  LawReport r;
  r.law = std::move(law);
  r.space = std::move(space);
  r.seed = seed;
  r.tolerance = tol;
  r.samples_run = static_cast<int>(outcomes.size());
  for (const auto& o : outcomes) {
    const double margin = o.slack / norm_for(o.scale, tol);
    if (r.samples_run > 0 && (&o == &outcomes.front() || margin < r.worst_margin)) r.worst_margin = margin;
    if (margin < -tol) {
      if (r.violations == 0) r.witness = o.points;
      ++r.violations;
    }
  }
  return r;
}

bool four_point_holds(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y, const SpacePoint& z,
                      const SpacePoint& p, double tol) {
  auto sq = [&](const SpacePoint& a, const SpacePoint& b) {
    const double d = distance(space, a, b);
    return d * d;
  };
  const double lhs = sq(x, z) + sq(y, p);
  const double rhs = sq(x, y) + sq(y, z) + sq(z, p) + sq(p, x);
  return lhs <= rhs + tol;
}

bool parallel_to(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& z, const SpacePoint& y,
                 const SpacePoint& w, double tol) {
  if (!space.uniquely_geodesic())
    fail(ErrorKind::UnsupportedSpace, "parallelism needs a uniquely geodesic space, got " + space.name());
  const double d1 = distance(space, x, y);
  const double d2 = distance(space, midpoint(space, x, z), midpoint(space, y, w));
  const double d3 = distance(space, z, w);
  return std::abs(d1 - d2) <= tol && std::abs(d1 - d3) <= tol && std::abs(d2 - d3) <= tol;
}

bool law_supported(const SpaceDescriptor& space, LawId law) {
  switch (law) {
    case LawId::ParallelTransfer: return space.uniquely_geodesic();
    case LawId::ProjectionNonexpansive:
    case LawId::ProjectionRay: return space.is_cat0();
    default: return true;
  }
}

namespace {

// Random closed convex set on which projection is offered.
ConvexSetDescriptor random_convex_set(const SpaceDescriptor& space, Rng& rng) {
  switch (space.kind()) {
    case SpaceKind::Euclidean: {
      switch (uniform_index(rng, 3)) {
        case 0: return BallSet{random_point(space, rng), uniform(rng, 0.2, 2.0)};
        case 1: return SegmentSet{random_point(space, rng), random_point(space, rng)};
        default: {
          PolytopeSet poly;
          const int n = 3 + uniform_index(rng, 4);
          for (int i = 0; i < n; ++i) poly.vertices.push_back(random_point(space, rng));
          return poly;
        }
      }
    }
    case SpaceKind::HyperbolicPlane:
      if (uniform_index(rng, 2) == 0) return BallSet{random_point(space, rng), uniform(rng, 0.2, 1.5)};
      return SegmentSet{random_point(space, rng), random_point(space, rng)};
    case SpaceKind::MetricTree: {
      switch (uniform_index(rng, 3)) {
        case 0: return BallSet{random_point(space, rng), uniform(rng, 0.2, 2.0)};
        case 1: return SegmentSet{random_point(space, rng), random_point(space, rng)};
        default: {
          SubtreeHullSet hull;
          const int n = 1 + uniform_index(rng, 3);
          for (int i = 0; i < n; ++i) hull.generators.push_back(std::get<TreePoint>(random_point(space, rng)));
          return hull;
        }
      }
    }
    case SpaceKind::MaxNormSeq: break;
  }
  fail(ErrorKind::UnsupportedSpace, "no projectable random sets in " + space.name());
}

struct ComparisonTriangle {
  std::array<std::array<double, 2>, 3> v;
};

ComparisonTriangle comparison_triangle(double d12, double d13, double d23) {
  ComparisonTriangle t;
  t.v[0] = {0.0, 0.0};
  if (d12 == 0.0) {
    t.v[1] = {0.0, 0.0};
    t.v[2] = {d13, 0.0};
    return t;
  }
  const double a = (d12 * d12 + d13 * d13 - d23 * d23) / (2.0 * d12);
  const double b = std::sqrt(std::max(0.0, (d13 - a) * (d13 + a)));
  t.v[1] = {d12, 0.0};
  t.v[2] = {a, b};
  return t;
}

SampleOutcome sample_law(const SpaceDescriptor& space, LawId law, Rng& rng, double tol) {
  auto rp = [&] { return random_point(space, rng); };
  switch (law) {
    case LawId::GeodesicParam: {
      const SpacePoint x = rp(), y = rp();
      const double t = uniform(rng), s = uniform(rng);
      const double d = distance(space, x, y);
      const double got = distance(space, combine(space, x, y, t), combine(space, x, y, s));
      return {-std::abs(got - std::abs(t - s) * d), d, {x, y}};
    }
    case LawId::ConvexMetric: {
      const SpacePoint x = rp(), y = rp(), z = rp();
      const double t = uniform(rng);
      const double dxy = distance(space, x, y), dxz = distance(space, x, z);
      const double lhs = distance(space, x, combine(space, y, z, t));
      return {(1.0 - t) * dxy + t * dxz - lhs, std::max(dxy, dxz), {x, y, z}};
    }
    case LawId::Busemann: {
      const SpacePoint x = rp(), y = rp(), z = rp(), w = rp();
      const double t = uniform(rng);
      const double d0 = distance(space, x, z), d1 = distance(space, y, w);
      const double lhs = distance(space, combine(space, x, y, t), combine(space, z, w, t));
      return {(1.0 - t) * d0 + t * d1 - lhs, std::max(d0, d1), {x, y, z, w}};
    }
    case LawId::Cat0FourPoint: {
      const SpacePoint x = rp(), y = rp(), z = rp(), p = rp();
      auto sq = [&](const SpacePoint& a, const SpacePoint& b) {
        const double d = distance(space, a, b);
        return d * d;
      };
      const double lhs = sq(x, z) + sq(y, p);
      const double rhs = sq(x, y) + sq(y, z) + sq(z, p) + sq(p, x);
      return {rhs - lhs, rhs, {x, y, z, p}};
    }
    case LawId::ComparisonTriangle: {
      const std::array<SpacePoint, 3> v{rp(), rp(), rp()};
      const auto tri = comparison_triangle(distance(space, v[0], v[1]), distance(space, v[0], v[2]),
                                           distance(space, v[1], v[2]));
      // Edge k joins vertex k and vertex (k + 1) % 3.
      auto on_edge = [&](int k, double s) { return combine(space, v[k], v[(k + 1) % 3], s); };
      auto bar = [&](int k, double s) {
        const auto& a = tri.v[k];
        const auto& b = tri.v[(k + 1) % 3];
        return std::array<double, 2>{a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])};
      };
      const int e1 = uniform_index(rng, 3), e2 = uniform_index(rng, 3);
      const double s1 = uniform(rng), s2 = uniform(rng);
      const SpacePoint p = on_edge(e1, s1), q = on_edge(e2, s2);
      const auto pb = bar(e1, s1), qb = bar(e2, s2);
      const double d_bar = std::hypot(pb[0] - qb[0], pb[1] - qb[1]);
      const double d = distance(space, p, q);
      return {d_bar - d, std::max(d, d_bar), {v[0], v[1], v[2], p, q}};
    }
    case LawId::ParallelTransfer: {
      SpacePoint x, z, y, w;
      if (space.kind() == SpaceKind::Euclidean) {
        // Translates: [x,z] || [x+v, z+v].
        x = rp();
        z = rp();
        const SpacePoint shift = rp();
        const auto& v = coords_of(shift);
        auto shifted = [&](const SpacePoint& p) {
          std::vector<double> c = coords_of(p);
          for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
          return with_coords(space, std::move(c));
        };
        y = shifted(x);
        w = shifted(z);
      } else {
        // Translates along one geodesic.
        const SpacePoint p = rp(), q = rp();
        const double s1 = 0.5 * uniform(rng), s2 = 0.5 * uniform(rng);
        const double h = uniform(rng) * (1.0 - std::max(s1, s2));
        x = combine(space, p, q, s1);
        z = combine(space, p, q, s2);
        y = combine(space, p, q, s1 + h);
        w = combine(space, p, q, s2 + h);
      }
      // Conclusion: [x,y] || [z,w].
      const double d1 = distance(space, x, z);
      const double d2 = distance(space, midpoint(space, x, y), midpoint(space, z, w));
      const double d3 = distance(space, y, w);
      const double spread = std::max({std::abs(d1 - d2), std::abs(d1 - d3), std::abs(d2 - d3)});
      return {-spread, std::max({d1, d2, d3}), {x, z, y, w}};
    }
    case LawId::StrictConvexity: {
      for (int attempt = 0;; ++attempt) {
        const SpacePoint a = rp();
        SpacePoint x, y;
        if (uniform(rng) < 0.5) {
          const double r = uniform(rng, 0.1, 2.0);
          x = random_point_on_sphere(space, a, r, rng);
          y = random_point_on_sphere(space, a, r, rng);
        } else {
          x = rp();
          y = rp();
        }
        if (distance(space, x, y) < 1e-6 && attempt < 16) continue;
        const double r = std::max(distance(space, x, a), distance(space, y, a));
        const double dm = distance(space, midpoint(space, x, y), a);
        const double norm = norm_for(r, tol);
        // Violation iff d(m, a) >= r - kStrict.
        return {r - dm - tol::kStrict - tol * norm, r, {a, x, y}};
      }
    }
    case LawId::ProjectionNonexpansive: {
      const ConvexSetDescriptor set = random_convex_set(space, rng);
      const SpacePoint x = rp(), y = rp();
      const SpacePoint px = project(space, set, x), py = project(space, set, y);
      const double d = distance(space, x, y);
      return {d - distance(space, px, py), d, {x, y, px, py}};
    }
    case LawId::ProjectionRay: {
      const ConvexSetDescriptor set = random_convex_set(space, rng);
      const SpacePoint x = rp();
      const SpacePoint px = project(space, set, x);
      const SpacePoint y = combine(space, x, px, uniform(rng));
      const SpacePoint py = project(space, set, y);
      return {-distance(space, px, py), distance(space, x, px), {x, y, px, py}};
    }
  }
  return {};
}

}  // namespace

LawReport verify_law(const SpaceDescriptor& space, LawId law, int n_samples, std::uint64_t seed, double tol) {
  if (n_samples < 0) fail(ErrorKind::InvalidParameter, "sample count must be nonnegative");
  if (!(tol >= 0.0)) fail(ErrorKind::InvalidParameter, "tolerance must be nonnegative");
  if (n_samples > 0 && !law_supported(space, law))
    fail(ErrorKind::UnsupportedSpace, std::string(law_name(law)) + " is not checkable in " + space.name());
  const std::uint64_t stream = stream_id(law_name(law));
  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(n_samples));
  parallel_for(outcomes.size(), [&](std::size_t i) {
    Rng rng = sample_rng(seed, stream, i);
    outcomes[i] = sample_law(space, law, rng, tol);
  });
  return summarize(std::string(law_name(law)), space.name(), seed, tol, outcomes);
}

}  // namespace geoprox
