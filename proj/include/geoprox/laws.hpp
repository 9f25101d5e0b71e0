#pragma once

// Sampling-based verification of metric inequalities.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoprox/space.hpp"

namespace geoprox {

enum class LawId {
  GeodesicParam,
  ConvexMetric,
  Busemann,
  Cat0FourPoint,
  ComparisonTriangle,
  ParallelTransfer,
  StrictConvexity,
  ProjectionNonexpansive,
  ProjectionRay,
};

inline constexpr std::array<LawId, 9> kAllLaws{
    LawId::GeodesicParam,      LawId::ConvexMetric,     LawId::Busemann,
    LawId::Cat0FourPoint,      LawId::ComparisonTriangle, LawId::ParallelTransfer,
    LawId::StrictConvexity,    LawId::ProjectionNonexpansive, LawId::ProjectionRay,
};

// Kebab-case name, e.g. "cat0-four-point".
std::string_view law_name(LawId law);
std::optional<LawId> parse_law(std::string_view name);

struct LawReport {
  std::string law;
  std::string space;
  int samples_run = 0;
  int violations = 0;
  // Most negative normalized slack observed (0 when nothing was sampled).
  double worst_margin = 0.0;
  double tolerance = 0.0;
  std::vector<SpacePoint> witness;  // points of the first violating sample
  std::uint64_t seed = 0;

  bool passed() const { return violations == 0; }
};

// One sampled check: slack >= 0 means the inequality holds exactly. The slack
// is normalized by max(scale, floor / tol) so that tol acts as a relative
// tolerance with an absolute floor.
struct SampleOutcome {
  double slack = 0.0;
  double scale = 0.0;
  std::vector<SpacePoint> points;
};

// Folds per-sample outcomes (in index order) into a report.
LawReport summarize(std::string law, std::string space, std::uint64_t seed, double tol,
                    const std::vector<SampleOutcome>& outcomes);

// d(x,z)^2 + d(y,p)^2 <= d(x,y)^2 + d(y,z)^2 + d(z,p)^2 + d(p,x)^2 + tol.
bool four_point_holds(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y, const SpacePoint& z,
                      const SpacePoint& p, double tol);

// [x,z] parallel to [y,w]: d(x,y), d((x+z)/2, (y+w)/2), d(z,w) pairwise equal within tol.
bool parallel_to(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& z, const SpacePoint& y,
                 const SpacePoint& w, double tol);

bool law_supported(const SpaceDescriptor& space, LawId law);

LawReport verify_law(const SpaceDescriptor& space, LawId law, int n_samples, std::uint64_t seed, double tol);

}  // namespace geoprox
