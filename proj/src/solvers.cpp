#include "geoprox/solvers.hpp"

#include <cmath>

#include "geoprox/errors.hpp"

namespace geoprox {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::GapBelowEps: return "gap-below-eps";
    case StopReason::MaxIter: return "max-iter";
    case StopReason::Stationary: return "stationary";
  }
  return "unknown";
}

namespace {

constexpr double kStationary = 1e-14;

void check_run_args(double eps, int max_iter) {
  if (!(eps > 0.0)) fail(ErrorKind::InvalidParameter, "eps must be positive");
  if (max_iter < 0) fail(ErrorKind::InvalidParameter, "max_iter must be nonnegative");
}

}  // namespace

IterationTrace midpoint_iterate(const MapDescriptor& map, const SpacePoint& x0, double eps, int max_iter) {
  if (map.mode != MapMode::Noncyclic) fail(ErrorKind::WrongMode, "midpoint iteration needs a noncyclic map");
  check_run_args(eps, max_iter);
  validate_map(map);
  const auto& sp = map.pair.space;
  if (!sp.is_busemann()) fail(ErrorKind::UnsupportedSpace, "midpoint iteration needs a Busemann space");

  const Side side = side_of(map, x0);
  IterationTrace tr;
  SpacePoint x = x0;
  for (int n = 0;; ++n) {
    const auto tx = apply_on(map, side, x);
    const double gap = distance(sp, x, tx);
    tr.iterates.push_back(x);
    tr.gaps.push_back(gap);
    tr.n_iters = n;
    if (gap <= eps) {
      tr.stopped_reason = StopReason::GapBelowEps;
      break;
    }
    if (n >= max_iter) {
      tr.stopped_reason = StopReason::MaxIter;
      break;
    }
    auto next = midpoint(sp, x, tx);
    if (distance(sp, x, next) <= kStationary) {
      tr.stopped_reason = StopReason::Stationary;
      break;
    }
    x = std::move(next);
  }
  return tr;
}

IterationTrace cyclic_iterate(const MapDescriptor& map, const SpacePoint& x0, double eps, int max_iter) {
  if (map.mode != MapMode::Cyclic) fail(ErrorKind::WrongMode, "cyclic iteration needs a cyclic map");
  check_run_args(eps, max_iter);
  validate_map(map);
  const auto& sp = map.pair.space;
  const double dist = pair_extents(map.pair).dist_upper;

  Side side = side_of(map, x0);
  IterationTrace tr;
  tr.dist = dist;
  SpacePoint x = x0;
  for (int n = 0;; ++n) {
    const auto tx = apply_on(map, side, x);
    const double gap = distance(sp, x, tx);
    tr.iterates.push_back(x);
    tr.gaps.push_back(gap);
    tr.n_iters = n;
    tr.pair_gap = gap;
    if (std::abs(gap - dist) <= eps) {
      tr.stopped_reason = StopReason::GapBelowEps;
      break;
    }
    if (n >= max_iter) {
      tr.stopped_reason = StopReason::MaxIter;
      break;
    }
    // A cyclic orbit that has closed up into a 2-cycle will never move again.
    if (gap <= kStationary || (n >= 1 && distance(sp, tx, tr.iterates[static_cast<std::size_t>(n) - 1]) <= kStationary)) {
      tr.stopped_reason = StopReason::Stationary;
      break;
    }
    x = tx;
    side = image_side(map, side);
  }
  return tr;
}

PhiBound phi_bound(double b, double eps, const ModulusSpec& modulus_spec, const std::optional<SpaceDescriptor>& space) {
  if (!(b > 0.0) || !(eps > 0.0)) fail(ErrorKind::InvalidParameter, "b and eps must be positive");
  if (eps / b > 2.0) fail(ErrorKind::InvalidParameter, "eps / b exceeds 2");
  const auto sp = space.value_or(SpaceDescriptor::euclidean(2));
  PhiBound r{b, eps, modulus(modulus_spec, sp, b, eps / b), 0};
  if (!(r.delta > 0.0)) fail(ErrorKind::InvalidParameter, "modulus vanishes at (b, eps / b)");
  r.phi = static_cast<long long>(std::ceil(2.0 * b / (eps * r.delta)));
  return r;
}

}  // namespace geoprox
