#pragma once

// Self-maps of A u B built from projections, isometries and compositions.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geoprox/laws.hpp"
#include "geoprox/pairs.hpp"

namespace geoprox {

enum class MapMode { Cyclic, Noncyclic };

struct IdentityStep {};

struct ProjectStep {
  enum class Target { Other, Same, Fixed };
  Target target = Target::Other;
  // Used with Target::Fixed.
  std::optional<ConvexSetDescriptor> set;
};

// Space-specific isometry:
//   Euclidean     x -> Q x + t (Q orthogonal, row-major)
//   hyperbolic    x -> L x     (L preserves the Minkowski form and the upper sheet)
//   metric tree   vertex permutation that is a weighted-graph automorphism
//   max-norm      x -> x o sigma + t, sigma a coordinate permutation fixing coordinate 0
struct IsometryStep {
  std::vector<double> matrix;
  std::vector<double> translation;
  std::vector<int> permutation;
};

// x -> M x + t in a vector space, not checked to be an isometry. Useful for
// deliberately broken maps.
struct AffineStep {
  std::vector<double> matrix;
  std::vector<double> translation;
};

using MapStep = std::variant<IdentityStep, ProjectStep, IsometryStep, AffineStep>;

struct MapDescriptor {
  std::string name;
  MapMode mode = MapMode::Cyclic;
  std::vector<MapStep> rule;                   // applied left to right
  std::optional<std::vector<MapStep>> rule_b;  // rule on B when it differs
  PairDescriptor pair;
};

enum class Side { A, B };

std::string_view to_string(MapMode mode);

// Throws InvalidParameter for malformed isometries.
void validate_map(const MapDescriptor& map);

MapDescriptor make_projection_map(const PairDescriptor& pair);

// Membership tolerance used to place a point in A or B.
inline constexpr double kDomainTol = tol::kDomain;

// Side of p (A preferred when p lies in both). Throws OutOfDomain.
Side side_of(const MapDescriptor& map, const SpacePoint& p);

SpacePoint apply(const MapDescriptor& map, const SpacePoint& p);
SpacePoint apply_on(const MapDescriptor& map, Side side, const SpacePoint& p);

// Side the image of a point from `side` should land in.
Side image_side(const MapDescriptor& map, Side side);

LawReport check_rel_nonexpansive(const MapDescriptor& map, int n_samples, std::uint64_t seed, double tol,
                                 bool upgrade_mode);

// Counts sampled applications whose image misses the set dictated by the mode.
struct ContainmentReport {
  int samples = 0;
  int misses = 0;
};
ContainmentReport check_mode_containment(const MapDescriptor& map, int n_samples, std::uint64_t seed, double tol);

// Builders for common isometries.
IsometryStep rotation_2d(double angle, const std::vector<double>& center);
IsometryStep euclid_reflection(int dim, int axis);

}  // namespace geoprox
