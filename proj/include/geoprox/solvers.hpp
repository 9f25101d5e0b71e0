#pragma once

// Fixed-point and best-proximity iterations.

#include <optional>
#include <string_view>
#include <vector>

#include "geoprox/maps.hpp"

namespace geoprox {

enum class StopReason { GapBelowEps, MaxIter, Stationary };
std::string_view to_string(StopReason reason);

struct IterationTrace {
  std::vector<SpacePoint> iterates;
  std::vector<double> gaps;  // gaps[n] = d(x_n, T x_n)
  StopReason stopped_reason = StopReason::MaxIter;
  int n_iters = 0;
  // Cyclic runs only: final d(x_n, T x_n) and the target dist(A, B).
  std::optional<double> pair_gap;
  std::optional<double> dist;
};

// x_{n+1} = midpoint(x_n, T x_n) for a noncyclic map; stops once the gap is <= eps.
IterationTrace midpoint_iterate(const MapDescriptor& map, const SpacePoint& x0, double eps, int max_iter);

// x_{n+1} = T x_n for a cyclic map; stops once |d(x_n, T x_n) - dist(A, B)| <= eps.
IterationTrace cyclic_iterate(const MapDescriptor& map, const SpacePoint& x0, double eps, int max_iter);

struct PhiBound {
  double b = 0.0;
  double eps = 0.0;
  double delta = 0.0;  // modulus value at (b, eps / b)
  long long phi = 0;
};

// phi = ceil(2 b / (eps delta(b, eps / b))). The modulus is evaluated in `space`
// (the Euclidean plane by default).
PhiBound phi_bound(double b, double eps, const ModulusSpec& modulus_spec,
                   const std::optional<SpaceDescriptor>& space = std::nullopt);

}  // namespace geoprox
