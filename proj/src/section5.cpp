#include "geoprox/section5.hpp"

#include <algorithm>
#include <cmath>

#include "geoprox/errors.hpp"
#include "geoprox/parallel.hpp"
#include "geoprox/sampling.hpp"

namespace geoprox {

PairDescriptor JamesInstance::pair(int n_samples, std::uint64_t seed) const {
  return PairDescriptor{space, a, b, Sampler{n_samples, seed}};
}

SpacePoint JamesInstance::unit(int i, double scale) const {
  std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
  c.at(static_cast<std::size_t>(i)) = scale;
  return maxnorm(std::move(c));
}

JamesInstance build_instance(int dim) {
  if (dim < 3) fail(ErrorKind::InvalidParameter, "the slice pair needs dim >= 3");
  JamesInstance inst{dim, SpaceDescriptor::max_norm_seq(dim), make_james_slice(1.0, 1.0), make_james_slice(2.0, 2.0)};
  if (!contains(inst.space, inst.a, inst.unit(0), tol::kExact) ||
      !contains(inst.space, inst.b, inst.unit(0, 2.0), tol::kExact))
    fail(ErrorKind::InvalidInstance, "e1 / 2e1 membership failed");
  return inst;
}

std::vector<MapDescriptor> section5_cyclic_maps(const JamesInstance& inst) {
  const auto p = inst.pair();
  auto point_set = [](const SpacePoint& q) { return ConvexSetDescriptor{SegmentSet{q, q}}; };
  const ProjectStep to_e1{ProjectStep::Target::Fixed, point_set(inst.unit(0))};
  const ProjectStep to_2e1{ProjectStep::Target::Fixed, point_set(inst.unit(0, 2.0))};

  std::vector<double> shift(static_cast<std::size_t>(inst.dim), 0.0);
  shift[0] = 1.0;
  IsometryStep translate;
  translate.translation = shift;

  // Reverse the tail coordinates and translate by e1.
  IsometryStep permute_shift;
  permute_shift.permutation.push_back(0);
  for (int i = inst.dim - 1; i >= 1; --i) permute_shift.permutation.push_back(i);
  permute_shift.translation = shift;

  std::vector<MapDescriptor> maps;
  maps.push_back({"anchor-swap", MapMode::Cyclic, {to_2e1}, std::vector<MapStep>{to_e1}, p});
  maps.push_back({"shift-to-b", MapMode::Cyclic, {translate}, std::vector<MapStep>{to_e1}, p});
  maps.push_back({"permute-shift", MapMode::Cyclic, {permute_shift}, std::vector<MapStep>{to_e1}, p});
  return maps;
}

PairDescriptor remark_pair(int dim) {
  if (dim < 3) fail(ErrorKind::InvalidParameter, "the remark pair needs dim >= 3");
  const auto space = SpaceDescriptor::max_norm_seq(dim);
  PolytopeSet a, b;
  for (int n = 1; n < dim; ++n) {
    std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
    v[0] = 1.0;
    v[static_cast<std::size_t>(n)] = 1.0;
    a.vertices.push_back(maxnorm(v));
    for (auto& c : v) c *= 2.0;
    b.vertices.push_back(maxnorm(v));
  }
  return PairDescriptor{space, a, b, Sampler{2000, 0}};
}

Section5Report verify_section5(const JamesInstance& inst, int n_samples, std::uint64_t seed, double tol) {
  if (n_samples < 0) fail(ErrorKind::InvalidParameter, "n_samples must be nonnegative");
  const auto& sp = inst.space;
  Section5Report r;
  r.dim = inst.dim;
  r.samples = n_samples;
  r.seed = seed;
  r.tol = tol;

  const auto ext = pair_extents(inst.pair(n_samples, seed));
  r.dist = ext.dist_upper;
  r.dist_witness = ext.arg_dist;
  r.dist_exact = ext.dist_exact;
  r.diam = ext.diam_lower;
  r.diam_witness = ext.arg_diam;
  r.diam_exact = ext.diam_exact;
  r.dist_ok = ext.dist_exact && std::abs(r.dist - 1.0) <= tol;
  r.diam_ok = ext.diam_exact && std::abs(r.diam - 2.0) <= tol;

  // Farthest distance from sampled x in A to B. Each value is attained by a
  // point of B, so it is a lower bound even when not certified exact.
  r.pns_surrogate_bound = 2.0 - 1.0 / std::sqrt(static_cast<double>(inst.dim - 1));
  const std::size_t n = static_cast<std::size_t>(n_samples);
  std::vector<double> far(n, 0.0);
  std::vector<char> certified(n, 0);
  const auto stream = stream_id("section5-samples");
  const auto e1 = inst.unit(0);
  parallel_for(n, [&](std::size_t i) {
    Rng rng = sample_rng(seed, stream, i);
    const auto x = sample_in_set(sp, inst.a, rng);
    far[i] = farthest(sp, x, inst.b, Sampler{0, seed});
    auto y = coords_of(x);
    y[0] += 1.0;
    const auto yp = maxnorm(y);
    certified[i] = contains(sp, inst.b, yp, tol) && std::abs(distance(sp, x, yp) - 1.0) <= tol;
  });
  r.pns_surrogate_min = n > 0 ? *std::min_element(far.begin(), far.end()) : 0.0;
  r.surrogate_ok = n > 0 && r.pns_surrogate_min >= r.pns_surrogate_bound - tol;
  r.a0_certified = static_cast<int>(std::count(certified.begin(), certified.end(), 1));
  r.a0_ok = r.a0_certified == n_samples;

  const auto x = inst.unit(0, 2.0);
  const auto far_a = farthest_point(sp, x, inst.a, Sampler{n_samples, seed});
  r.delta_2e1_a = far_a.value;
  r.d_2e1_a = nearest_distance(sp, x, inst.a);
  bool gaps_ok = far_a.exact && std::abs(r.delta_2e1_a - 1.0) <= tol && std::abs(r.d_2e1_a - 1.0) <= tol;
  for (const auto& map : section5_cyclic_maps(inst)) {
    const auto tx = apply(map, x);
    const auto ttx = apply(map, tx);
    MapGapCheck g{map.name, distance(sp, x, tx), distance(sp, tx, ttx)};
    gaps_ok = gaps_ok && std::abs(g.gap_first - r.dist) <= tol && std::abs(g.gap_second - r.dist) <= tol;
    r.best_prox_gap = std::max({r.best_prox_gap, g.gap_first, g.gap_second});
    r.map_gaps.push_back(std::move(g));
  }
  r.best_prox_ok = gaps_ok && !r.map_gaps.empty();
  return r;
}

}  // namespace geoprox
