#pragma once

#include <cstdint>
#include <random>

#include "geoprox/space.hpp"

namespace geoprox {

using Rng = std::mt19937_64;

// Independent generator for sample `index` of stream `stream`. Every sampling
// loop draws sample i from its own generator so results do not depend on
// chunking or thread count, and a larger budget extends a smaller one.
Rng sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// Stable 64-bit tag for a stream name.
std::uint64_t stream_id(std::string_view name);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
double normal(Rng& rng);
int uniform_index(Rng& rng, int n);

// Default random point: standard normal coordinates (Euclidean), exp of a
// tangent vector of norm <= 3 at the origin (hyperboloid), uniform edge then
// uniform offset (tree), uniform in [-2, 2]^n (max-norm).
SpacePoint random_point(const SpaceDescriptor& space, Rng& rng);

// Random point with d(center, p) <= radius.
SpacePoint random_point_within(const SpaceDescriptor& space, const SpacePoint& center, double radius, Rng& rng);

// Random point with d(center, p) == radius where the space allows a direct
// construction (vector spaces, hyperbolic plane); trees fall back to a point
// within the radius.
SpacePoint random_point_on_sphere(const SpaceDescriptor& space, const SpacePoint& center, double radius, Rng& rng);

}  // namespace geoprox
