#include "geoprox/maps.hpp"

#include <algorithm>
#include <cmath>

#include "geoprox/errors.hpp"
#include "geoprox/parallel.hpp"
#include "geoprox/sampling.hpp"

namespace geoprox {

std::string_view to_string(MapMode mode) { return mode == MapMode::Cyclic ? "cyclic" : "noncyclic"; }

namespace {

std::vector<double> mat_vec(const std::vector<double>& m, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += m[i * n + j] * x[j];
  return y;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

void validate_isometry(const SpaceDescriptor& sp, const IsometryStep& iso) {
  switch (sp.kind()) {
    case SpaceKind::Euclidean: {
      const std::size_t n = static_cast<std::size_t>(sp.dim());
      if (iso.matrix.size() != n * n || (!iso.translation.empty() && iso.translation.size() != n))
        fail(ErrorKind::InvalidParameter, "isometry shape does not match dimension");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double dot = 0.0;
          for (std::size_t k = 0; k < n; ++k) dot += iso.matrix[k * n + i] * iso.matrix[k * n + j];
          if (!near(dot, i == j ? 1.0 : 0.0)) fail(ErrorKind::InvalidParameter, "isometry matrix is not orthogonal");
        }
      return;
    }
    case SpaceKind::HyperbolicPlane: {
      if (iso.matrix.size() != 9) fail(ErrorKind::InvalidParameter, "Lorentz map must be 3x3");
      const double J[3] = {1.0, -1.0, -1.0};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double v = 0.0;
          for (int k = 0; k < 3; ++k) v += iso.matrix[k * 3 + i] * J[k] * iso.matrix[k * 3 + j];
          if (!near(v, i == j ? J[i] : 0.0)) fail(ErrorKind::InvalidParameter, "matrix does not preserve the Minkowski form");
        }
      if (iso.matrix[0] <= 0.0) fail(ErrorKind::InvalidParameter, "Lorentz map swaps the hyperboloid sheets");
      return;
    }
    case SpaceKind::MetricTree: {
      const auto& tree = sp.tree();
      const auto& p = iso.permutation;
      if (static_cast<int>(p.size()) != tree.vertex_count())
        fail(ErrorKind::InvalidParameter, "vertex permutation has the wrong length");
      std::vector<int> seen(p.size(), 0);
      for (int v : p) {
        if (v < 0 || v >= tree.vertex_count() || seen[static_cast<std::size_t>(v)]++)
          fail(ErrorKind::InvalidParameter, "not a vertex permutation");
      }
      for (const auto& e : tree.edges()) {
        const int img = tree.edge_between(p[static_cast<std::size_t>(e.a)], p[static_cast<std::size_t>(e.b)]);
        if (img < 0 || !near(tree.edge(img).length, e.length))
          fail(ErrorKind::InvalidParameter, "vertex permutation is not a tree automorphism");
      }
      return;
    }
    case SpaceKind::MaxNormSeq: {
      const std::size_t n = static_cast<std::size_t>(sp.dim());
      const auto& p = iso.permutation;
      if (!p.empty()) {
        if (p.size() != n || p[0] != 0) fail(ErrorKind::InvalidParameter, "permutation must fix coordinate 0");
        std::vector<int> seen(n, 0);
        for (int v : p)
          if (v < 0 || v >= static_cast<int>(n) || seen[static_cast<std::size_t>(v)]++)
            fail(ErrorKind::InvalidParameter, "not a coordinate permutation");
      }
      if (!iso.translation.empty() && iso.translation.size() != n)
        fail(ErrorKind::InvalidParameter, "translation has the wrong length");
      return;
    }
  }
}

SpacePoint apply_isometry(const SpaceDescriptor& sp, const IsometryStep& iso, const SpacePoint& x) {
  switch (sp.kind()) {
    case SpaceKind::Euclidean: {
      auto y = mat_vec(iso.matrix, coords_of(x));
      for (std::size_t i = 0; i < iso.translation.size(); ++i) y[i] += iso.translation[i];
      return euclid(std::move(y));
    }
    case SpaceKind::HyperbolicPlane: {
      const auto& c = std::get<HyperboloidVec>(x).coords;
      const auto y = mat_vec(iso.matrix, {c[0], c[1], c[2]});
      // Re-seat x0 on the sheet to absorb round-off.
      const double x0 = std::sqrt(1.0 + y[1] * y[1] + y[2] * y[2]);
      return hyper(x0, y[1], y[2]);
    }
    case SpaceKind::MetricTree: {
      const auto& tree = sp.tree();
      const auto& p = std::get<TreePoint>(x);
      const auto& e = tree.edge(p.edge);
      const int a = iso.permutation[static_cast<std::size_t>(e.a)];
      const int b = iso.permutation[static_cast<std::size_t>(e.b)];
      const int img = tree.edge_between(a, b);
      const auto& f = tree.edge(img);
      return TreePoint{img, f.a == a ? p.offset : std::max(0.0, f.length - p.offset)};
    }
    case SpaceKind::MaxNormSeq: {
      const auto& c = coords_of(x);
      std::vector<double> y = c;
      if (!iso.permutation.empty())
        for (std::size_t i = 0; i < c.size(); ++i) y[i] = c[static_cast<std::size_t>(iso.permutation[i])];
      for (std::size_t i = 0; i < iso.translation.size(); ++i) y[i] += iso.translation[i];
      return maxnorm(std::move(y));
    }
  }
  return x;
}

const std::vector<MapStep>& rule_for(const MapDescriptor& map, Side side) {
  if (side == Side::B && map.rule_b) return *map.rule_b;
  return map.rule;
}

}  // namespace

void validate_map(const MapDescriptor& map) {
  validate_pair(map.pair);
  const auto& sp = map.pair.space;
  auto check = [&](const std::vector<MapStep>& rule) {
    for (const auto& step : rule) {
      if (const auto* iso = std::get_if<IsometryStep>(&step)) validate_isometry(sp, *iso);
      if (const auto* aff = std::get_if<AffineStep>(&step)) {
        const std::size_t n = static_cast<std::size_t>(sp.dim());
        if (sp.kind() != SpaceKind::Euclidean && sp.kind() != SpaceKind::MaxNormSeq)
          fail(ErrorKind::UnsupportedSpace, "affine steps need a vector space");
        if (aff->matrix.size() != n * n || (!aff->translation.empty() && aff->translation.size() != n))
          fail(ErrorKind::InvalidParameter, "affine step shape does not match dimension");
      }
      if (const auto* pr = std::get_if<ProjectStep>(&step)) {
        if (pr->target == ProjectStep::Target::Fixed) {
          if (!pr->set) fail(ErrorKind::InvalidParameter, "fixed projection target is missing");
          validate_set(sp, *pr->set);
          if (!can_project(sp, *pr->set)) fail(ErrorKind::UnsupportedSpace, "no projection onto the fixed target");
        } else if (!can_project(sp, map.pair.a) || !can_project(sp, map.pair.b)) {
          fail(ErrorKind::UnsupportedSpace, "no projection onto the pair's sets in " + sp.name());
        }
      }
    }
  };
  check(map.rule);
  if (map.rule_b) check(*map.rule_b);
}

MapDescriptor make_projection_map(const PairDescriptor& pair) {
  validate_pair(pair);
  if (!pair.space.is_cat0()) fail(ErrorKind::UnsupportedSpace, "projection map needs a CAT(0) space");
  return MapDescriptor{"projection", MapMode::Cyclic, {ProjectStep{ProjectStep::Target::Other, std::nullopt}},
                       std::nullopt, pair};
}

Side side_of(const MapDescriptor& map, const SpacePoint& p) {
  const auto& sp = map.pair.space;
  validate_point(sp, p);
  if (contains(sp, map.pair.a, p, kDomainTol)) return Side::A;
  if (contains(sp, map.pair.b, p, kDomainTol)) return Side::B;
  fail(ErrorKind::OutOfDomain, "point lies outside A u B");
}

Side image_side(const MapDescriptor& map, Side side) {
  if (map.mode == MapMode::Noncyclic) return side;
  return side == Side::A ? Side::B : Side::A;
}

SpacePoint apply_on(const MapDescriptor& map, Side side, const SpacePoint& p) {
  const auto& sp = map.pair.space;
  const auto& own = side == Side::A ? map.pair.a : map.pair.b;
  const auto& other = side == Side::A ? map.pair.b : map.pair.a;
  if (!contains(sp, own, p, kDomainTol)) fail(ErrorKind::OutOfDomain, "point lies outside its set");
  SpacePoint x = p;
  for (const auto& step : rule_for(map, side)) {
    if (std::holds_alternative<IdentityStep>(step)) continue;
    if (const auto* pr = std::get_if<ProjectStep>(&step)) {
      switch (pr->target) {
        case ProjectStep::Target::Other: x = project(sp, other, x); break;
        case ProjectStep::Target::Same: x = project(sp, own, x); break;
        case ProjectStep::Target::Fixed: x = project(sp, *pr->set, x); break;
      }
    } else if (const auto* iso = std::get_if<IsometryStep>(&step)) {
      x = apply_isometry(sp, *iso, x);
    } else if (const auto* aff = std::get_if<AffineStep>(&step)) {
      auto y = mat_vec(aff->matrix, coords_of(x));
      for (std::size_t i = 0; i < aff->translation.size(); ++i) y[i] += aff->translation[i];
      x = with_coords(sp, std::move(y));
    }
  }
  return x;
}

SpacePoint apply(const MapDescriptor& map, const SpacePoint& p) { return apply_on(map, side_of(map, p), p); }

LawReport check_rel_nonexpansive(const MapDescriptor& map, int n_samples, std::uint64_t seed, double tol,
                                 bool upgrade_mode) {
  validate_map(map);
  if (n_samples < 0) fail(ErrorKind::InvalidParameter, "n_samples must be nonnegative");
  const auto& sp = map.pair.space;
  const int kinds = upgrade_mode ? 3 : 1;
  const std::size_t n = static_cast<std::size_t>(n_samples);
  std::vector<SampleOutcome> outcomes(n * static_cast<std::size_t>(kinds));
  const auto stream = stream_id("relatively-nonexpansive");

  parallel_for(n, [&](std::size_t i) {
    Rng rng = sample_rng(seed, stream, i);
    const auto x = sample_in_set(sp, map.pair.a, rng);
    const auto y = sample_in_set(sp, map.pair.b, rng);
    const auto tx = apply_on(map, Side::A, x);
    const auto ty = apply_on(map, Side::B, y);
    auto outcome = [&](const SpacePoint& p, const SpacePoint& q, const SpacePoint& tp, const SpacePoint& tq) {
      return SampleOutcome{distance(sp, p, q) - distance(sp, tp, tq), 1.0, {p, q}};
    };
    outcomes[i * static_cast<std::size_t>(kinds)] = outcome(x, y, tx, ty);
    if (upgrade_mode) {
      const auto x2 = sample_in_set(sp, map.pair.a, rng);
      const auto y2 = sample_in_set(sp, map.pair.b, rng);
      outcomes[i * 3 + 1] = outcome(x, x2, tx, apply_on(map, Side::A, x2));
      outcomes[i * 3 + 2] = outcome(y, y2, ty, apply_on(map, Side::B, y2));
    }
  });
  auto r = summarize("relatively-nonexpansive", sp.name(), seed, tol, outcomes);
  return r;
}

ContainmentReport check_mode_containment(const MapDescriptor& map, int n_samples, std::uint64_t seed, double tol) {
  validate_map(map);
  const auto& sp = map.pair.space;
  ContainmentReport r;
  const auto stream = stream_id("mode-containment");
  for (int i = 0; i < n_samples; ++i) {
    Rng rng = sample_rng(seed, stream, static_cast<std::uint64_t>(i));
    const Side side = i % 2 == 0 ? Side::A : Side::B;
    const auto& own = side == Side::A ? map.pair.a : map.pair.b;
    const auto x = sample_in_set(sp, own, rng);
    const auto img = apply_on(map, side, x);
    const auto& target = image_side(map, side) == Side::A ? map.pair.a : map.pair.b;
    ++r.samples;
    if (!contains(sp, target, img, tol)) ++r.misses;
  }
  return r;
}

IsometryStep rotation_2d(double angle, const std::vector<double>& center) {
  const double c = std::cos(angle), s = std::sin(angle);
  IsometryStep iso;
  iso.matrix = {c, -s, s, c};
  // Fix the center: t = center - R center.
  iso.translation = {center[0] - (c * center[0] - s * center[1]), center[1] - (s * center[0] + c * center[1])};
  return iso;
}

IsometryStep euclid_reflection(int dim, int axis) {
  IsometryStep iso;
  const std::size_t n = static_cast<std::size_t>(dim);
  iso.matrix.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) iso.matrix[i * n + i] = 1.0;
  iso.matrix[static_cast<std::size_t>(axis) * n + static_cast<std::size_t>(axis)] = -1.0;
  return iso;
}

}  // namespace geoprox
