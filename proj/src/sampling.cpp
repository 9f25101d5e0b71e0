#include "geoprox/sampling.hpp"

#include <cmath>
#include <numbers>

namespace geoprox {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Random direction with unit norm in the space's own norm (vector spaces).
std::vector<double> unit_direction(const SpaceDescriptor& space, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(space.dim()));
  const std::vector<double> zero(v.size(), 0.0);
  double n = 0.0;
  while (n == 0.0) {
    for (double& c : v) c = normal(rng);
    n = distance(space, with_coords(space, v), with_coords(space, zero));
  }
  for (double& c : v) c /= n;
  return v;
}

std::array<double, 3> hyper_unit_tangent(const HyperboloidVec& base, Rng& rng) {
  const auto& c = base.coords;
  for (;;) {
    std::array<double, 3> w{normal(rng), normal(rng), normal(rng)};
    const double ip = hyperbolic::minkowski(w, c);
    for (int i = 0; i < 3; ++i) w[i] -= ip * c[i];
    const double n2 = -hyperbolic::minkowski(w, w);
    if (n2 > 1e-20) {
      const double n = std::sqrt(n2);
      for (double& x : w) x /= n;
      return w;
    }
  }
}

SpacePoint point_at_radius(const SpaceDescriptor& space, const SpacePoint& center, double rho, Rng& rng) {
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::MaxNormSeq: {
      std::vector<double> z = coords_of(center);
      const auto dir = unit_direction(space, rng);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += rho * dir[i];
      return with_coords(space, std::move(z));
    }
    case SpaceKind::HyperbolicPlane: {
      const auto& c = std::get<HyperboloidVec>(center);
      auto u = hyper_unit_tangent(c, rng);
      for (double& x : u) x *= rho;
      return hyperbolic::exp_map(c, u);
    }
    case SpaceKind::MetricTree: {
      const SpacePoint q = random_point(space, rng);
      return ray_point(space, center, q, rho);
    }
  }
  return center;
}

}  // namespace

Rng sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t s = splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL) ^ (index * 0xd6e8feb86659fd93ULL));
  return Rng(s);
}

std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

int uniform_index(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

SpacePoint random_point(const SpaceDescriptor& space, Rng& rng) {
  switch (space.kind()) {
    case SpaceKind::Euclidean: {
      std::vector<double> c(static_cast<std::size_t>(space.dim()));
      for (double& x : c) x = normal(rng);
      return EuclideanVec{std::move(c)};
    }
    case SpaceKind::MaxNormSeq: {
      std::vector<double> c(static_cast<std::size_t>(space.dim()));
      for (double& x : c) x = uniform(rng, -2.0, 2.0);
      return MaxNormVec{std::move(c)};
    }
    case SpaceKind::HyperbolicPlane: {
      const double r = 3.0 * uniform(rng);
      const double angle = 2.0 * std::numbers::pi * uniform(rng);
      return hyperbolic::from_polar(r, angle);
    }
    case SpaceKind::MetricTree: {
      const auto& tree = space.tree();
      const int e = uniform_index(rng, tree.edge_count());
      return TreePoint{e, uniform(rng, 0.0, tree.edge(e).length)};
    }
  }
  return SpacePoint{};
}

SpacePoint random_point_within(const SpaceDescriptor& space, const SpacePoint& center, double radius, Rng& rng) {
  return point_at_radius(space, center, radius * uniform(rng), rng);
}

SpacePoint random_point_on_sphere(const SpaceDescriptor& space, const SpacePoint& center, double radius, Rng& rng) {
  return point_at_radius(space, center, radius, rng);
}

}  // namespace geoprox
