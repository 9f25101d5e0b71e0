#pragma once

// Pairs of convex sets: dist / diameter extents, proximal sets A0 and B0,
// proximality and proximal-normal-structure witnesses.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "geoprox/sets.hpp"

namespace geoprox {

struct Sampler {
  int n_samples = 2000;
  std::uint64_t seed = 0;
};

struct PairDescriptor {
  SpaceDescriptor space;
  ConvexSetDescriptor a;
  ConvexSetDescriptor b;
  Sampler sampler{};
};

void validate_pair(const PairDescriptor& pair);

using PointPair = std::pair<SpacePoint, SpacePoint>;

struct ExtentReport {
  double dist_lower = 0.0;
  double dist_upper = 0.0;
  double diam_lower = 0.0;
  double diam_upper = 0.0;
  PointPair arg_dist;  // attains dist_upper
  PointPair arg_diam;  // attains diam_lower
  bool dist_exact = false;
  bool diam_exact = false;
  int samples = 0;  // sampled pairs used by non-exact bounds
};

ExtentReport pair_extents(const PairDescriptor& pair);

struct FarthestResult {
  double value = 0.0;
  bool exact = false;
  SpacePoint witness;
};

// sup over s in S of d(x, s): exact for structured sets, otherwise a sampled lower bound.
FarthestResult farthest_point(const SpaceDescriptor& space, const SpacePoint& x, const ConvexSetDescriptor& set,
                              const Sampler& sampler = {});
double farthest(const SpaceDescriptor& space, const SpacePoint& x, const ConvexSetDescriptor& set,
                const Sampler& sampler = {});

// inf over s in S of d(x, s), through the projection when offered, else sampled.
double nearest_distance(const SpaceDescriptor& space, const SpacePoint& x, const ConvexSetDescriptor& set,
                        const Sampler& sampler = {});

struct MinSetsReport {
  enum class Status { Ok, EmptyWitness };
  Status status = Status::Ok;
  double dist = 0.0;
  std::vector<PointPair> a0;  // (a, b) with a in A0 and its partner b
  std::vector<PointPair> b0;  // (b, a) with b in B0 and its partner a
  int attempts = 0;
  // Set when the space is Busemann, where A0 and B0 are known to be nonempty.
  bool nonempty_expected = false;
};

MinSetsReport min_sets(const PairDescriptor& pair, double tol);

struct ProximalityReport {
  bool proximal = true;
  std::optional<SpacePoint> counterexample;
  int checked_a = 0;
  int checked_b = 0;
  double dist = 0.0;
};

ProximalityReport is_proximal(const PairDescriptor& pair, double tol);

struct PnsWitness {
  SpacePoint m1;  // midpoint of x, y in H1
  SpacePoint m2;  // midpoint of their partners in H2
  SpacePoint x_partner;
  SpacePoint y_partner;
  double alpha = 1.0;
  double eps = 0.0;
  double diam = 0.0;  // delta(H1, H2)
  double delta_m1_h2 = 0.0;
  double delta_m2_h1 = 0.0;

  bool bound_holds(double tol) const {
    return delta_m1_h2 <= alpha * diam + tol && delta_m2_h1 <= alpha * diam + tol;
  }
  bool strictly_inside() const { return delta_m1_h2 < diam && delta_m2_h1 < diam; }
};

PnsWitness pns_witness(const SpaceDescriptor& space, const ConvexSetDescriptor& h1, const ConvexSetDescriptor& h2,
                       const SpacePoint& x, const SpacePoint& y, const ModulusSpec& modulus_spec, double tol,
                       const Sampler& sampler = {});

}  // namespace geoprox
