#pragma once

// Closed convex sets with membership, metric projection and sampling.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geoprox/sampling.hpp"
#include "geoprox/space.hpp"

namespace geoprox {

struct SegmentSet {
  SpacePoint a;
  SpacePoint b;
};

struct BallSet {
  SpacePoint center;
  double radius = 1.0;
};

// Convex hull of finitely many points (Euclidean and max-norm spaces only).
struct PolytopeSet {
  std::vector<SpacePoint> vertices;
};

// Smallest subtree containing the generators.
struct SubtreeHullSet {
  std::vector<TreePoint> generators;
};

// {x : ||x|| <= radius, x_1 = first_coord, x_i >= 0} in the max-norm space.
struct JamesSliceSet {
  double radius = 1.0;
  double first_coord = 1.0;
};

using ConvexSetDescriptor = std::variant<SegmentSet, BallSet, PolytopeSet, SubtreeHullSet, JamesSliceSet>;

std::string_view set_type_name(const ConvexSetDescriptor& set);

// Throws InvalidParameter when first_coord > radius or radius <= 0.
JamesSliceSet make_james_slice(double radius, double first_coord);

// Throws InvalidSet (malformed) or UnsupportedSpace (variant not offered here).
void validate_set(const SpaceDescriptor& space, const ConvexSetDescriptor& set);

bool contains(const SpaceDescriptor& space, const ConvexSetDescriptor& set, const SpacePoint& p, double tol);

// Whether project() is offered for this set in this space.
bool can_project(const SpaceDescriptor& space, const ConvexSetDescriptor& set);

// Nearest point of `set` to x. In the max-norm space some minimizer is returned.
SpacePoint project(const SpaceDescriptor& space, const ConvexSetDescriptor& set, const SpacePoint& x,
                   double tol = tol::kExact);

SpacePoint sample_in_set(const SpaceDescriptor& space, const ConvexSetDescriptor& set, Rng& rng);

// Finite point list whose convex hull is the set (segment endpoints, polytope
// vertices, subtree generators); empty for balls and slices.
std::vector<SpacePoint> extreme_candidates(const ConvexSetDescriptor& set);

// ---------------------------------------------------------------------------
// Building blocks.

// Minimizes t -> d(x, combine(a, b, t)) by golden-section search.
SpacePoint project_segment_search(const SpaceDescriptor& space, const SpacePoint& a, const SpacePoint& b,
                                  const SpacePoint& x);

struct HullProjection {
  std::vector<double> point;
  std::vector<double> weights;  // convex weights over the input points
  double gap = 0.0;             // final optimality gap
  int iterations = 0;
};

// Euclidean nearest point of conv(points) to x, by the minimum-norm-point
// method (vertex linear minimization plus affine line search over the active
// vertex set). Throws NoConvergence when max_iter is exhausted.
HullProjection nearest_in_hull(const std::vector<std::vector<double>>& points, const std::vector<double>& x,
                               double tol, int max_iter = 100000);

// Covered interval of each edge of a subtree hull; unused edges have lo > hi.
struct EdgeInterval {
  double lo = 1.0;
  double hi = 0.0;
  bool used() const { return lo <= hi; }
};
std::vector<EdgeInterval> subtree_coverage(const MetricTree& tree, const std::vector<TreePoint>& generators);

}  // namespace geoprox
