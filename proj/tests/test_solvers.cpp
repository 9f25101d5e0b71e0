#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "geoprox/errors.hpp"
#include "geoprox/section5.hpp"
#include "geoprox/solvers.hpp"
#include "support.hpp"

using namespace geoprox;
using namespace geoprox::testing;

namespace {

Instance rect_instance() { return load_instance(data_path("instances/rectangles.json")); }

// Rotation by pi/3 about c on the disk of radius 2.5 around c.
MapDescriptor rotation_map(double cx, double cy) {
  const auto E = SpaceDescriptor::euclidean(2);
  const BallSet disk{e2(cx, cy), 2.5};
  return MapDescriptor{"rotation", MapMode::Noncyclic, {rotation_2d(std::numbers::pi / 3, {cx, cy})}, std::nullopt,
                       PairDescriptor{E, disk, disk, {}}};
}

template <class F>
void expect_kind(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error";
  } catch (const GeoError& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Midpoint, IdentityStopsImmediately) {
  const auto tr = midpoint_iterate(rect_instance().map("identity"), e2(-1.5, 0.2), 1e-6, 100);
  EXPECT_EQ(tr.n_iters, 0);
  EXPECT_EQ(tr.stopped_reason, StopReason::GapBelowEps);
  ASSERT_EQ(tr.gaps.size(), 1u);
  EXPECT_EQ(tr.gaps[0], 0.0);
}

TEST(Midpoint, ReflectionLandsOnAxis) {
  const auto tr = midpoint_iterate(rect_instance().map("reflect"), e2(-1.5, 1), 1e-6, 100);
  EXPECT_EQ(tr.n_iters, 1);
  EXPECT_EQ(tr.stopped_reason, StopReason::GapBelowEps);
  ASSERT_EQ(tr.iterates.size(), 2u);
  EXPECT_EQ(tr.iterates[1], e2(-1.5, 0));
  EXPECT_NEAR(tr.gaps[0], 2.0, 1e-15);
  EXPECT_EQ(tr.gaps[1], 0.0);
}

// Oracle: x_{n+1} - c = ((I + R) / 2)(x_n - c), evaluated directly.
TEST(Midpoint, RotationLinearRecurrence) {
  const double cx = 0.3, cy = -0.2;
  const auto T = rotation_map(cx, cy);
  const double th = std::numbers::pi / 3;
  const double m00 = (1 + std::cos(th)) / 2, m01 = -std::sin(th) / 2, m10 = std::sin(th) / 2, m11 = m00;
  const auto tr = midpoint_iterate(T, e2(cx + 2.0, cy + 0.5), 1e-6, 10000);
  EXPECT_EQ(tr.stopped_reason, StopReason::GapBelowEps);
  EXPECT_LE(tr.gaps.back(), 1e-6);
  EXPECT_EQ(tr.gaps.size(), tr.iterates.size());
  double u = 2.0, v = 0.5;
  for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
    const auto p = coords(tr.iterates[n]);
    ASSERT_NEAR(p[0] - cx, u, 1e-12) << n;
    ASSERT_NEAR(p[1] - cy, v, 1e-12) << n;
    // Gap equals |x_n - c| for a rotation by pi/3.
    ASSERT_NEAR(tr.gaps[n], std::hypot(u, v), 1e-12);
    const double nu = m00 * u + m01 * v, nv = m10 * u + m11 * v;
    u = nu;
    v = nv;
  }
}

TEST(Midpoint, GapsNonincreasingAndFejer) {
  const auto T = rotation_map(0, 0);
  const auto c = e2(0, 0);
  const auto E = T.pair.space;
  for (const auto& x0 : {e2(2, 0), e2(-1, 1.5), e2(0.1, -2.4)}) {
    const auto tr = midpoint_iterate(T, x0, 1e-6, 10000);
    EXPECT_LE(tr.gaps.back(), 1e-6);
    for (std::size_t n = 1; n < tr.gaps.size(); ++n) {
      EXPECT_LE(tr.gaps[n], tr.gaps[n - 1] + 1e-12);
      EXPECT_LE(distance(E, c, tr.iterates[n]), distance(E, c, tr.iterates[n - 1]) + 1e-9);
    }
  }
}

// Run past the stopping rule: the tail of the gap sequence stays below eps.
TEST(Midpoint, GapTailVanishes) {
  const auto tr = midpoint_iterate(rotation_map(0, 0), e2(1.7, 1.1), 1e-13, 10000);
  ASSERT_GE(tr.gaps.size(), 10u);
  for (std::size_t i = tr.gaps.size() - 10; i < tr.gaps.size(); ++i) EXPECT_LT(tr.gaps[i], 1e-6);
}

TEST(Midpoint, HyperbolicAndTreeIsometries) {
  const auto H = SpaceDescriptor::hyperbolic_plane();
  const double c = std::cos(1.0), s = std::sin(1.0);
  const BallSet disk{hyper(1, 0, 0), 2.0};
  const MapDescriptor hrot{"h-rot", MapMode::Noncyclic, {IsometryStep{{1, 0, 0, 0, c, -s, 0, s, c}, {}, {}}},
                           std::nullopt, PairDescriptor{H, disk, disk, {}}};
  const auto tr = midpoint_iterate(hrot, hyperbolic::from_polar(1.5, 0.3), 1e-8, 10000);
  EXPECT_EQ(tr.stopped_reason, StopReason::GapBelowEps);
  for (std::size_t n = 1; n < tr.iterates.size(); ++n)
    EXPECT_LE(distance(H, hyper(1, 0, 0), tr.iterates[n]), distance(H, hyper(1, 0, 0), tr.iterates[n - 1]) + 1e-9);

  const auto T = tree_space("symmetric.json");
  const BallSet around{vertex(T, "r"), 1.5};
  const MapDescriptor swap{"swap", MapMode::Noncyclic, {IsometryStep{{}, {}, {0, 2, 1, 4, 3}}}, std::nullopt,
                           PairDescriptor{T, around, around, {}}};
  const auto tt = midpoint_iterate(swap, vertex(T, "a2"), 1e-9, 100);
  EXPECT_EQ(tt.stopped_reason, StopReason::GapBelowEps);
  EXPECT_NEAR(distance(T, tt.iterates.back(), vertex(T, "r")), 0.0, 1e-12);
}

TEST(Midpoint, Errors) {
  const auto inst = rect_instance();
  expect_kind(ErrorKind::WrongMode, [&] { midpoint_iterate(inst.map("projection"), e2(-2, 1), 1e-6, 10); });
  expect_kind(ErrorKind::InvalidParameter, [&] { midpoint_iterate(inst.map("reflect"), e2(-2, 1), 0.0, 10); });
  expect_kind(ErrorKind::InvalidParameter, [&] { midpoint_iterate(inst.map("reflect"), e2(-2, 1), 1e-6, -1); });
  expect_kind(ErrorKind::OutOfDomain, [&] { midpoint_iterate(inst.map("reflect"), e2(0, 0), 1e-6, 10); });
  const auto J = build_instance(3);
  const MapDescriptor mn{"id", MapMode::Noncyclic, {IdentityStep{}}, std::nullopt, J.pair()};
  expect_kind(ErrorKind::UnsupportedSpace, [&] { midpoint_iterate(mn, J.unit(0), 1e-6, 10); });
}

TEST(Midpoint, MaxIterZero) {
  const auto tr = midpoint_iterate(rect_instance().map("reflect"), e2(-1.5, 1), 1e-6, 0);
  EXPECT_EQ(tr.stopped_reason, StopReason::MaxIter);
  EXPECT_EQ(tr.n_iters, 0);
  EXPECT_EQ(tr.iterates.size(), 1u);
}

TEST(Cyclic, RectanglesProjection) {
  const auto tr = cyclic_iterate(rect_instance().map("projection"), e2(-2, 1), 1e-9, 10000);
  EXPECT_EQ(tr.stopped_reason, StopReason::GapBelowEps);
  EXPECT_EQ(tr.n_iters, 1);
  ASSERT_TRUE(tr.pair_gap && tr.dist);
  EXPECT_NEAR(*tr.pair_gap, 2.0, 1e-9);
  EXPECT_NEAR(*tr.dist, 2.0, 1e-9);
  EXPECT_NEAR(tr.gaps[0], 3.0, 1e-12);
  const auto x1 = coords(tr.iterates[1]);
  EXPECT_NEAR(x1[0], 1.0, 1e-12);
  EXPECT_NEAR(x1[1], 1.0, 1e-12);
}

TEST(Cyclic, BestProximityStartStopsEarly) {
  const auto tr = cyclic_iterate(rect_instance().map("projection"), e2(-1, 0.5), 1e-9, 10000);
  EXPECT_LE(tr.n_iters, 1);
  EXPECT_NEAR(*tr.pair_gap, 2.0, 1e-9);
}

TEST(Cyclic, Section5MapsFromTwoE1) {
  const auto inst = build_instance(8);
  for (const auto& m : section5_cyclic_maps(inst)) {
    const auto tr = cyclic_iterate(m, inst.unit(0, 2.0), 1e-9, 100);
    EXPECT_EQ(tr.n_iters, 0) << m.name;
    EXPECT_NEAR(*tr.pair_gap, 1.0, 1e-9) << m.name;
  }
}

// Projection maps on proximal CAT(0) pairs reach dist(A, B).
TEST(Cyclic, ProjectionReachesDist) {
  const auto E3 = SpaceDescriptor::euclidean(3);
  const PolytopeSet tri{{euclid({0, 0, 0}), euclid({1, 0, 0}), euclid({0, 1, 0})}};
  const PolytopeSet tri_up{{euclid({0, 0, 2}), euclid({1, 0, 2}), euclid({0, 1, 2})}};
  const auto P = make_projection_map({E3, tri, tri_up, {}});
  const auto tr = cyclic_iterate(P, euclid({0.2, 0.3, 0}), 1e-9, 10000);
  EXPECT_EQ(tr.stopped_reason, StopReason::GapBelowEps);
  EXPECT_NEAR(*tr.pair_gap, 2.0, 1e-9);
}

TEST(Cyclic, TwoCycleIsStationary) {
  const auto inst = rect_instance();
  const MapDescriptor hop{"hop",
                          MapMode::Cyclic,
                          {ProjectStep{ProjectStep::Target::Fixed, PolytopeSet{{e2(2, 1)}}}},
                          std::vector<MapStep>{ProjectStep{ProjectStep::Target::Fixed, PolytopeSet{{e2(-2, -1)}}}},
                          inst.pair("sym")};
  const auto tr = cyclic_iterate(hop, e2(-1.5, 0), 1e-9, 1000);
  EXPECT_EQ(tr.stopped_reason, StopReason::Stationary);
  EXPECT_LT(tr.n_iters, 5);
}

TEST(Cyclic, Errors) {
  const auto inst = rect_instance();
  expect_kind(ErrorKind::WrongMode, [&] { cyclic_iterate(inst.map("reflect"), e2(-2, 1), 1e-6, 10); });
  const auto tr = cyclic_iterate(inst.map("projection"), e2(-2, 1), 1e-6, 0);
  EXPECT_EQ(tr.stopped_reason, StopReason::MaxIter);
}

TEST(PhiBound, FormulaValues) {
  EXPECT_EQ(phi_bound(1, 0.5, ModulusSpec::cat0()).phi, 126);
  EXPECT_EQ(phi_bound(2, 0.5, ModulusSpec::cat0()).phi, 1020);
  EXPECT_EQ(phi_bound(1, 2, ModulusSpec::cat0()).phi, 1);
  const auto p = phi_bound(1, 0.5, ModulusSpec::cat0());
  EXPECT_NEAR(p.delta, 1 - std::sqrt(0.9375), 1e-15);
  EXPECT_NEAR(phi_bound(2, 0.5, ModulusSpec::cat0()).delta, 1 - std::sqrt(1 - 0.015625), 1e-15);
  expect_kind(ErrorKind::InvalidParameter, [] { phi_bound(1, 2.5, ModulusSpec::cat0()); });
  expect_kind(ErrorKind::InvalidParameter, [] { phi_bound(0, 0.5, ModulusSpec::cat0()); });
}

// First-hitting index of gap <= eps never exceeds phi.
TEST(PhiBound, BoundsRotationHittingIndex) {
  const auto T = rotation_map(0, 0);
  for (double b : {1.0, 2.0})
    for (double eps : {0.5, 0.1, 0.01}) {
      for (double angle : {0.0, 1.0, 2.5}) {
        const auto x0 = e2(b * std::cos(angle), b * std::sin(angle));
        const auto tr = midpoint_iterate(T, x0, eps, 10000);
        ASSERT_EQ(tr.stopped_reason, StopReason::GapBelowEps);
        EXPECT_LE(tr.n_iters, phi_bound(b, eps, ModulusSpec::cat0()).phi) << b << " " << eps;
      }
    }
}

TEST(Traces, DeterministicAndSerialised) {
  const auto T = rotation_map(0, 0);
  const auto a = midpoint_iterate(T, e2(1, 1), 1e-6, 10000);
  const auto b = midpoint_iterate(T, e2(1, 1), 1e-6, 10000);
  EXPECT_EQ(a.iterates, b.iterates);
  EXPECT_EQ(a.gaps, b.gaps);
  EXPECT_EQ(trace_jsonl(a), trace_jsonl(b));

  std::istringstream lines(trace_jsonl(a));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = Json::parse(line);
    EXPECT_EQ(j.at("n").get<int>(), count);
    ++count;
  }
  EXPECT_EQ(count, static_cast<int>(a.iterates.size()));
  const auto csv = trace_csv(a);
  EXPECT_EQ(csv.rfind("n,gap\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(a.iterates.size()) + 1);
  EXPECT_EQ(to_string(StopReason::GapBelowEps), "gap-below-eps");
}
