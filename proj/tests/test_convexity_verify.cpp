#include <gtest/gtest.h>

#include <cstdlib>

#include "geoprox/errors.hpp"
#include "geoprox/laws.hpp"
#include "geoprox/sampling.hpp"
#include "support.hpp"

using namespace geoprox;
using namespace geoprox::testing;

namespace {

std::vector<SpaceDescriptor> flagged_spaces() {
  return {SpaceDescriptor::euclidean(2), SpaceDescriptor::euclidean(3), SpaceDescriptor::hyperbolic_plane(),
          star_tree(), caterpillar_tree()};
}

bool same_report(const LawReport& a, const LawReport& b) {
  return a.law == b.law && a.space == b.space && a.samples_run == b.samples_run && a.violations == b.violations &&
         a.worst_margin == b.worst_margin && a.witness == b.witness && a.seed == b.seed;
}

}  // namespace

TEST(FourPoint, Examples) {
  const auto E = SpaceDescriptor::euclidean(2);
  const auto o = e2(0, 0);
  EXPECT_TRUE(four_point_holds(E, o, o, o, o, 0.0));
  // Square: diagonals^2 sum = 4 = sides^2 sum.
  EXPECT_TRUE(four_point_holds(E, e2(0, 0), e2(1, 0), e2(1, 1), e2(0, 1), 1e-12));
  EXPECT_FALSE(four_point_holds(E, e2(0, 0), e2(1, 0), e2(1, 1), e2(0, 1), -1e-6));

  const auto M = SpaceDescriptor::max_norm_seq(2);
  const auto x = maxnorm({0, 0}), y = maxnorm({1, 1}), z = maxnorm({2, 0}), p = maxnorm({1, -1});
  EXPECT_DOUBLE_EQ(distance(M, x, z), 2.0);
  EXPECT_DOUBLE_EQ(distance(M, y, p), 2.0);
  for (const auto& [u, v] : {std::pair{x, y}, {y, z}, {z, p}, {p, x}}) EXPECT_DOUBLE_EQ(distance(M, u, v), 1.0);
  EXPECT_FALSE(four_point_holds(M, x, y, z, p, 1e-9));
}

TEST(ParallelTo, Examples) {
  const auto E = SpaceDescriptor::euclidean(2);
  EXPECT_TRUE(parallel_to(E, e2(0, 0), e2(0, 0), e2(3, 1), e2(3, 1), 1e-12));
  EXPECT_TRUE(parallel_to(E, e2(0, 0), e2(2, 0), e2(0, 1), e2(2, 1), 1e-12));
  EXPECT_FALSE(parallel_to(E, e2(0, 0), e2(2, 0), e2(0, 1), e2(3, 1), 1e-9));
}

TEST(ParallelTo, MaxNormUnsupported) {
  const auto M = SpaceDescriptor::max_norm_seq(2);
  const auto o = maxnorm({0, 0});
  EXPECT_THROW(parallel_to(M, o, o, o, o, 1e-9), GeoError);
}

TEST(VerifyLaw, ZeroSamplesIsVacuous) {
  for (const auto& sp : {SpaceDescriptor::euclidean(2), SpaceDescriptor::max_norm_seq(2)}) {
    for (LawId law : kAllLaws) {
      const auto r = verify_law(sp, law, 0, 1, 1e-9);
      EXPECT_EQ(r.samples_run, 0);
      EXPECT_EQ(r.violations, 0);
      EXPECT_TRUE(r.witness.empty());
    }
  }
}

TEST(VerifyLaw, UnsupportedCombinations) {
  const auto M = SpaceDescriptor::max_norm_seq(2);
  for (LawId law : {LawId::ParallelTransfer, LawId::ProjectionNonexpansive, LawId::ProjectionRay}) {
    try {
      verify_law(M, law, 10, 1, 1e-9);
      ADD_FAILURE() << law_name(law);
    } catch (const GeoError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::UnsupportedSpace);
    }
  }
  EXPECT_THROW(verify_law(SpaceDescriptor::euclidean(2), LawId::Busemann, -1, 1, 1e-9), GeoError);
}

// Oracle: direct per-quadruple evaluation with coordinates drawn independently.
TEST(VerifyLaw, EuclideanFourPointOracle) {
  const auto E = SpaceDescriptor::euclidean(3);
  const auto r = verify_law(E, LawId::Cat0FourPoint, 100000, 2024, 1e-9);
  EXPECT_EQ(r.samples_run, 100000);
  EXPECT_EQ(r.violations, 0);

  std::mt19937_64 gen(99);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 20000; ++i) {
    std::array<std::array<double, 3>, 4> q{};
    for (auto& pt : q)
      for (auto& c : pt) c = nd(gen);
    auto sq = [&](int a, int b) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += (q[a][k] - q[b][k]) * (q[a][k] - q[b][k]);
      return s;
    };
    // x=0, y=1, z=2, p=3
    ASSERT_LE(sq(0, 2) + sq(1, 3), sq(0, 1) + sq(1, 2) + sq(2, 3) + sq(3, 0) + 1e-12);
  }
}

TEST(VerifyLaw, MaxNormViolationsWithWitness) {
  const auto M = SpaceDescriptor::max_norm_seq(2);
  const double tol = 1e-9;
  const auto fp = verify_law(M, LawId::Cat0FourPoint, 10000, 31, tol);
  EXPECT_GT(fp.violations, 0);
  ASSERT_EQ(fp.witness.size(), 4u);
  EXPECT_FALSE(four_point_holds(M, fp.witness[0], fp.witness[1], fp.witness[2], fp.witness[3], tol));
  EXPECT_LT(fp.worst_margin, -tol);

  const auto sc = verify_law(M, LawId::StrictConvexity, 10000, 31, tol);
  EXPECT_GT(sc.violations, 0);
  EXPECT_FALSE(sc.witness.empty());
}

TEST(VerifyLaw, FlaggedSpacesPassAllLaws) {
  for (const auto& sp : flagged_spaces()) {
    for (LawId law : kAllLaws) {
      const auto r = verify_law(sp, law, 2000, 77, 1e-9);
      EXPECT_EQ(r.violations, 0) << sp.name() << " " << law_name(law) << " worst " << r.worst_margin;
      EXPECT_EQ(r.samples_run, 2000);
    }
  }
}

TEST(VerifyLaw, ReportInvariants) {
  for (const auto& sp : {SpaceDescriptor::euclidean(2), SpaceDescriptor::max_norm_seq(2)}) {
    for (LawId law : {LawId::Cat0FourPoint, LawId::StrictConvexity, LawId::ConvexMetric}) {
      const double tol = 1e-9;
      const auto r = verify_law(sp, law, 3000, 5, tol);
      EXPECT_EQ(r.violations == 0, r.worst_margin >= -tol);
      EXPECT_EQ(r.violations > 0, !r.witness.empty());
    }
  }
}

TEST(VerifyLaw, ReproducibleAcrossThreadCounts) {
  const auto H = SpaceDescriptor::hyperbolic_plane();
  const auto M = SpaceDescriptor::max_norm_seq(2);
  const auto a = verify_law(H, LawId::ComparisonTriangle, 3000, 12, 1e-9);
  const auto b = verify_law(M, LawId::Cat0FourPoint, 3000, 12, 1e-9);
  setenv("GEOPROX_THREADS", "1", 1);
  const auto a1 = verify_law(H, LawId::ComparisonTriangle, 3000, 12, 1e-9);
  const auto b1 = verify_law(M, LawId::Cat0FourPoint, 3000, 12, 1e-9);
  unsetenv("GEOPROX_THREADS");
  EXPECT_TRUE(same_report(a, a1));
  EXPECT_TRUE(same_report(b, b1));
  const auto c = verify_law(H, LawId::ComparisonTriangle, 3000, 13, 1e-9);
  EXPECT_EQ(c.seed, 13u);
}

TEST(Summarize, OrderOfMergeIsByIndex) {
  std::vector<SampleOutcome> outs{{1.0, 1.0, {}}, {-0.5, 1.0, {e2(1, 0)}}, {-2.0, 1.0, {e2(2, 0)}}};
  const auto r = summarize("x", "euclidean(2)", 0, 1e-9, outs);
  EXPECT_EQ(r.violations, 2);
  EXPECT_DOUBLE_EQ(r.worst_margin, -2.0);
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_EQ(r.witness[0], e2(1, 0));
}

TEST(LawNames, RoundTrip) {
  for (LawId law : kAllLaws) EXPECT_EQ(parse_law(law_name(law)), law);
  EXPECT_FALSE(parse_law("cat0").has_value());
  EXPECT_EQ(law_name(LawId::Cat0FourPoint), "cat0-four-point");
}
