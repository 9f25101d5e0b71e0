#pragma once

// Model geodesic spaces and their primitive operations.
//
// Four concrete spaces are supported: Euclidean R^n, the hyperbolic plane in
// the hyperboloid model, finite metric trees and the finite truncation of the
// sequence space with norm max{|x|_inf, |x|_2 / sqrt(2)}. Points are plain
// values; every operation takes the space explicitly.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "geoprox/errors.hpp"

namespace geoprox {

namespace tol {
// Exact-comparison tolerance for distances of order one.
inline constexpr double kExact = 1e-9;
// Absolute floor for relative law tolerances.
inline constexpr double kAbsFloor = 1e-12;
// Strictness gap used by the strict-convexity law.
inline constexpr double kStrict = 1e-12;
// Membership tolerance used for map domains.
inline constexpr double kDomain = 1e-7;
}  // namespace tol

struct EuclideanVec {
  std::vector<double> coords;
  friend bool operator==(const EuclideanVec&, const EuclideanVec&) = default;
};

// Point on the upper sheet of x0^2 - x1^2 - x2^2 = 1.
struct HyperboloidVec {
  std::array<double, 3> coords{1.0, 0.0, 0.0};
  friend bool operator==(const HyperboloidVec&, const HyperboloidVec&) = default;
};

// Point on edge `edge` at distance `offset` from the edge's first endpoint.
struct TreePoint {
  int edge = 0;
  double offset = 0.0;
  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

struct MaxNormVec {
  std::vector<double> coords;
  friend bool operator==(const MaxNormVec&, const MaxNormVec&) = default;
};

using SpacePoint = std::variant<EuclideanVec, HyperboloidVec, TreePoint, MaxNormVec>;

enum class SpaceKind { Euclidean, HyperbolicPlane, MetricTree, MaxNormSeq };

std::string_view to_string(SpaceKind kind);

class MetricTree {
 public:
  struct Edge {
    int a = 0;
    int b = 0;
    double length = 0.0;
  };

  // Throws InvalidParameter unless the graph is a tree with positive lengths.
  MetricTree(std::vector<std::string> vertex_ids, std::vector<Edge> edges);

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& vertex_ids() const { return ids_; }

  // -1 when unknown.
  int vertex_index(const std::string& id) const;
  double vertex_distance(int u, int v) const { return dist_[index(u, v)]; }
  // Vertices on the unique path from u to v, both inclusive.
  std::vector<int> vertex_path(int u, int v) const;
  // -1 when u and v are not adjacent.
  int edge_between(int u, int v) const;
  const std::vector<int>& incident_edges(int v) const { return incident_.at(static_cast<std::size_t>(v)); }

  // Canonical point representing vertex v.
  TreePoint vertex_point(int v) const;

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * ids_.size() + static_cast<std::size_t>(v);
  }

  std::vector<std::string> ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<double> dist_;
  std::vector<int> next_hop_;
};

class SpaceDescriptor {
 public:
  static SpaceDescriptor euclidean(int dim);
  static SpaceDescriptor hyperbolic_plane();
  static SpaceDescriptor metric_tree(std::shared_ptr<const MetricTree> tree);
  static SpaceDescriptor max_norm_seq(int dim);

  SpaceKind kind() const { return kind_; }
  // Ambient coordinate count: n for vector spaces, 3 for the hyperboloid, 0 for trees.
  int dim() const { return dim_; }
  const MetricTree& tree() const;
  const std::shared_ptr<const MetricTree>& tree_ptr() const { return tree_; }

  bool is_cat0() const { return flagged_; }
  bool is_busemann() const { return flagged_; }
  bool is_uniformly_convex() const { return flagged_; }
  bool uniquely_geodesic() const { return kind_ != SpaceKind::MaxNormSeq; }

  std::string name() const;

 private:
  SpaceDescriptor(SpaceKind kind, int dim, std::shared_ptr<const MetricTree> tree)
      : kind_(kind), dim_(dim), tree_(std::move(tree)), flagged_(kind != SpaceKind::MaxNormSeq) {}

  SpaceKind kind_;
  int dim_;
  std::shared_ptr<const MetricTree> tree_;
  bool flagged_;
};

// Throws InvalidPoint if p does not belong to space.
void validate_point(const SpaceDescriptor& space, const SpacePoint& p);

double distance(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y);

// The point z on the geodesic from x to y with d(x,z) = t d(x,y).
SpacePoint combine(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y, double t);

SpacePoint midpoint(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y);

// Point at distance rho from `from` along the geodesic towards `toward`,
// extended past `toward` where the space allows it (vector spaces and the
// hyperbolic plane). In a tree the ray stops at `toward`.
SpacePoint ray_point(const SpaceDescriptor& space, const SpacePoint& from, const SpacePoint& toward, double rho);

// Hyperboloid helpers.
namespace hyperbolic {
double minkowski(const std::array<double, 3>& x, const std::array<double, 3>& y);
HyperboloidVec from_polar(double radius, double angle);
// exp map at base along tangent vector v (with <v, base> = 0).
HyperboloidVec exp_map(const HyperboloidVec& base, const std::array<double, 3>& v);
}  // namespace hyperbolic

// Convenience constructors.
inline SpacePoint euclid(std::vector<double> c) { return EuclideanVec{std::move(c)}; }
inline SpacePoint maxnorm(std::vector<double> c) { return MaxNormVec{std::move(c)}; }
inline SpacePoint hyper(double x0, double x1, double x2) { return HyperboloidVec{{x0, x1, x2}}; }
inline SpacePoint tree_point(int edge, double offset) { return TreePoint{edge, offset}; }

// Coordinates of a vector-space point (Euclidean or max-norm). Throws otherwise.
const std::vector<double>& coords_of(const SpacePoint& p);
SpacePoint with_coords(const SpaceDescriptor& space, std::vector<double> c);

// ---------------------------------------------------------------------------
// Modulus of uniform convexity.

struct ModulusSpec {
  enum class Form { Cat0ClosedForm, Empirical };
  Form form = Form::Cat0ClosedForm;
  int samples = 10000;
  std::uint64_t seed = 0;

  static ModulusSpec cat0() { return {}; }
  static ModulusSpec empirical(int samples, std::uint64_t seed) { return {Form::Empirical, samples, seed}; }
};

// delta(r, eps) with eps in (0, 2].
double modulus(const ModulusSpec& spec, const SpaceDescriptor& space, double r, double eps);

}  // namespace geoprox
