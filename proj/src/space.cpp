#include "geoprox/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "geoprox/sampling.hpp"
#include "geoprox/tree_geometry.hpp"

namespace geoprox {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorKind::InvalidSet: return "InvalidSet";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::WrongMode: return "WrongMode";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
  }
  return "Unknown";
}

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::HyperbolicPlane: return "hyperbolic-plane";
    case SpaceKind::MetricTree: return "metric-tree";
    case SpaceKind::MaxNormSeq: return "max-norm-seq";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// MetricTree

MetricTree::MetricTree(std::vector<std::string> vertex_ids, std::vector<Edge> edges)
    : ids_(std::move(vertex_ids)), edges_(std::move(edges)) {
  const int n = vertex_count();
  if (n == 0) fail(ErrorKind::InvalidParameter, "metric tree needs at least one vertex");
  for (std::size_t i = 0; i < ids_.size(); ++i)
    for (std::size_t j = i + 1; j < ids_.size(); ++j)
      if (ids_[i] == ids_[j]) fail(ErrorKind::InvalidParameter, "duplicate vertex id '" + ids_[i] + "'");
  if (edge_count() != n - 1)
    fail(ErrorKind::InvalidParameter, "a tree on " + std::to_string(n) + " vertices has " + std::to_string(n - 1) +
                                          " edges, got " + std::to_string(edge_count()));
  incident_.assign(static_cast<std::size_t>(n), {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.a < 0 || ed.a >= n || ed.b < 0 || ed.b >= n) fail(ErrorKind::InvalidParameter, "edge endpoint out of range");
    if (ed.a == ed.b) fail(ErrorKind::InvalidParameter, "self-loop in metric tree");
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      fail(ErrorKind::InvalidParameter, "edge lengths must be positive and finite");
    incident_[static_cast<std::size_t>(ed.a)].push_back(e);
    incident_[static_cast<std::size_t>(ed.b)].push_back(e);
  }

  const auto nn = static_cast<std::size_t>(n);
  dist_.assign(nn * nn, std::numeric_limits<double>::infinity());
  next_hop_.assign(nn * nn, -1);
  // BFS from every source; with n - 1 edges, connectivity implies acyclicity.
  for (int s = 0; s < n; ++s) {
    std::vector<int> parent(nn, -1);
    std::queue<int> queue;
    dist_[index(s, s)] = 0.0;
    parent[static_cast<std::size_t>(s)] = s;
    queue.push(s);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int e : incident_[static_cast<std::size_t>(u)]) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        const int v = ed.a == u ? ed.b : ed.a;
        if (parent[static_cast<std::size_t>(v)] != -1) continue;
        parent[static_cast<std::size_t>(v)] = u;
        dist_[index(s, v)] = dist_[index(s, u)] + ed.length;
        queue.push(v);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (parent[static_cast<std::size_t>(v)] == -1) fail(ErrorKind::InvalidParameter, "metric tree is not connected");
      // Next hop from v towards s is v's BFS parent.
      next_hop_[index(v, s)] = parent[static_cast<std::size_t>(v)];
    }
  }
}

int MetricTree::vertex_index(const std::string& id) const {
  const auto it = std::find(ids_.begin(), ids_.end(), id);
  return it == ids_.end() ? -1 : static_cast<int>(it - ids_.begin());
}

std::vector<int> MetricTree::vertex_path(int u, int v) const {
  std::vector<int> out{u};
  while (u != v) {
    u = next_hop_[index(u, v)];
    out.push_back(u);
  }
  return out;
}

int MetricTree::edge_between(int u, int v) const {
  for (int e : incident_.at(static_cast<std::size_t>(u))) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if ((ed.a == u && ed.b == v) || (ed.a == v && ed.b == u)) return e;
  }
  return -1;
}

TreePoint MetricTree::vertex_point(int v) const {
  const auto& inc = incident_.at(static_cast<std::size_t>(v));
  if (inc.empty()) fail(ErrorKind::InvalidPoint, "isolated vertex has no edge representation");
  const Edge& ed = edges_[static_cast<std::size_t>(inc.front())];
  return TreePoint{inc.front(), ed.a == v ? 0.0 : ed.length};
}

// ---------------------------------------------------------------------------
// Tree geometry

namespace treegeo {

void validate(const MetricTree& tree, const TreePoint& p) {
  if (p.edge < 0 || p.edge >= tree.edge_count()) fail(ErrorKind::InvalidPoint, "tree point refers to unknown edge");
  const double len = tree.edge(p.edge).length;
  if (!(p.offset >= -tol::kAbsFloor) || !(p.offset <= len + tol::kAbsFloor))
    fail(ErrorKind::InvalidPoint, "tree point offset outside its edge");
}

namespace {

struct Gate {
  int u = -1;  // exit vertex of p's edge
  int w = -1;  // entry vertex of q's edge
  double length = std::numeric_limits<double>::infinity();
};

Gate best_gate(const MetricTree& tree, const TreePoint& p, const TreePoint& q) {
  const auto& ep = tree.edge(p.edge);
  const auto& eq = tree.edge(q.edge);
  const std::array<std::pair<int, double>, 2> exits{{{ep.a, p.offset}, {ep.b, ep.length - p.offset}}};
  const std::array<std::pair<int, double>, 2> entries{{{eq.a, q.offset}, {eq.b, eq.length - q.offset}}};
  Gate best;
  for (const auto& [u, du] : exits)
    for (const auto& [w, dw] : entries) {
      const double len = du + tree.vertex_distance(u, w) + dw;
      if (len < best.length) best = Gate{u, w, len};
    }
  return best;
}

double offset_of(const MetricTree& tree, int e, int v) {
  const auto& ed = tree.edge(e);
  return ed.a == v ? 0.0 : ed.length;
}

}  // namespace

double distance(const MetricTree& tree, const TreePoint& p, const TreePoint& q) {
  if (p.edge == q.edge) return std::abs(p.offset - q.offset);
  return best_gate(tree, p, q).length;
}

std::vector<EdgePiece> path(const MetricTree& tree, const TreePoint& p, const TreePoint& q) {
  if (p.edge == q.edge) return {EdgePiece{p.edge, p.offset, q.offset}};
  const Gate g = best_gate(tree, p, q);
  std::vector<EdgePiece> pieces;
  pieces.push_back({p.edge, p.offset, offset_of(tree, p.edge, g.u)});
  const auto verts = tree.vertex_path(g.u, g.w);
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    const int e = tree.edge_between(verts[i], verts[i + 1]);
    pieces.push_back({e, offset_of(tree, e, verts[i]), offset_of(tree, e, verts[i + 1])});
  }
  pieces.push_back({q.edge, offset_of(tree, q.edge, g.w), q.offset});
  return pieces;
}

TreePoint walk(const std::vector<EdgePiece>& pieces, double s) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const EdgePiece& pc = pieces[i];
    const double len = pc.length();
    if (s <= len || i + 1 == pieces.size()) {
      const double step = std::clamp(s, 0.0, len);
      const double off = pc.from <= pc.to ? pc.from + step : pc.from - step;
      return TreePoint{pc.edge, std::clamp(off, std::min(pc.from, pc.to), std::max(pc.from, pc.to))};
    }
    s -= len;
  }
  fail(ErrorKind::InvalidParameter, "empty tree path");
}

}  // namespace treegeo

// ---------------------------------------------------------------------------
// SpaceDescriptor

SpaceDescriptor SpaceDescriptor::euclidean(int dim) {
  if (dim < 1) fail(ErrorKind::InvalidParameter, "dimension must be positive");
  return SpaceDescriptor(SpaceKind::Euclidean, dim, nullptr);
}

SpaceDescriptor SpaceDescriptor::hyperbolic_plane() { return SpaceDescriptor(SpaceKind::HyperbolicPlane, 3, nullptr); }

SpaceDescriptor SpaceDescriptor::metric_tree(std::shared_ptr<const MetricTree> tree) {
  if (!tree) fail(ErrorKind::InvalidParameter, "null metric tree");
  return SpaceDescriptor(SpaceKind::MetricTree, 0, std::move(tree));
}

SpaceDescriptor SpaceDescriptor::max_norm_seq(int dim) {
  if (dim < 1) fail(ErrorKind::InvalidParameter, "dimension must be positive");
  return SpaceDescriptor(SpaceKind::MaxNormSeq, dim, nullptr);
}

const MetricTree& SpaceDescriptor::tree() const {
  if (!tree_) fail(ErrorKind::UnsupportedSpace, "space is not a metric tree");
  return *tree_;
}

std::string SpaceDescriptor::name() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == SpaceKind::Euclidean || kind_ == SpaceKind::MaxNormSeq) os << "(" << dim_ << ")";
  if (kind_ == SpaceKind::MetricTree) os << "(" << tree_->vertex_count() << " vertices)";
  return os.str();
}

// ---------------------------------------------------------------------------
// Points

namespace {

template <class T>
const T& as(const SpaceDescriptor& space, const SpacePoint& p) {
  const T* v = std::get_if<T>(&p);
  if (!v) fail(ErrorKind::InvalidPoint, "point kind does not match space " + space.name());
  return *v;
}

void check_coords(const SpaceDescriptor& space, const std::vector<double>& c) {
  if (static_cast<int>(c.size()) != space.dim())
    fail(ErrorKind::InvalidPoint, "expected " + std::to_string(space.dim()) + " coordinates, got " +
                                      std::to_string(c.size()));
  for (double v : c)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidPoint, "non-finite coordinate");
}

double euclid_norm(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

double max_norm_dist(const std::vector<double>& x, const std::vector<double>& y) {
  double inf = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    inf = std::max(inf, std::abs(d));
    sq += d * d;
  }
  return std::max(inf, std::sqrt(sq) / std::sqrt(2.0));
}

using Vec3 = std::array<double, 3>;

Vec3 normalize_hyperboloid(Vec3 z) {
  const double q = hyperbolic::minkowski(z, z);
  if (q > 0.0) {
    const double s = 1.0 / std::sqrt(q);
    for (double& c : z) c *= s;
  }
  return z;
}

double hyper_dist(const Vec3& x, const Vec3& y) {
  const double ip = hyperbolic::minkowski(x, y);
  if (ip >= 2.0) return std::acosh(ip);
  // Chord form, well conditioned for nearby points.
  const Vec3 v{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
  const double chord2 = std::max(0.0, -hyperbolic::minkowski(v, v));
  return 2.0 * std::asinh(std::sqrt(chord2) / 2.0);
}

// Unit tangent at a pointing to q; requires a != q.
Vec3 hyper_direction(const Vec3& a, const Vec3& q) {
  const double ip = hyperbolic::minkowski(a, q);
  Vec3 w{q[0] - ip * a[0], q[1] - ip * a[1], q[2] - ip * a[2]};
  const double n = std::sqrt(std::max(0.0, -hyperbolic::minkowski(w, w)));
  for (double& c : w) c /= n;
  return w;
}

}  // namespace

namespace hyperbolic {

double minkowski(const Vec3& x, const Vec3& y) { return x[0] * y[0] - x[1] * y[1] - x[2] * y[2]; }

HyperboloidVec from_polar(double radius, double angle) {
  return HyperboloidVec{{std::cosh(radius), std::sinh(radius) * std::cos(angle), std::sinh(radius) * std::sin(angle)}};
}

HyperboloidVec exp_map(const HyperboloidVec& base, const Vec3& v) {
  const double n = std::sqrt(std::max(0.0, -minkowski(v, v)));
  if (n == 0.0) return base;
  const double c = std::cosh(n), s = std::sinh(n) / n;
  Vec3 z;
  for (int i = 0; i < 3; ++i) z[i] = c * base.coords[i] + s * v[i];
  return HyperboloidVec{normalize_hyperboloid(z)};
}

}  // namespace hyperbolic

void validate_point(const SpaceDescriptor& space, const SpacePoint& p) {
  switch (space.kind()) {
    case SpaceKind::Euclidean: check_coords(space, as<EuclideanVec>(space, p).coords); return;
    case SpaceKind::MaxNormSeq: check_coords(space, as<MaxNormVec>(space, p).coords); return;
    case SpaceKind::HyperbolicPlane: {
      const auto& x = as<HyperboloidVec>(space, p).coords;
      for (double v : x)
        if (!std::isfinite(v)) fail(ErrorKind::InvalidPoint, "non-finite coordinate");
      const double q = hyperbolic::minkowski(x, x);
      if (std::abs(q - 1.0) > tol::kExact * std::max(1.0, x[0] * x[0]) || x[0] < 1.0 - tol::kExact)
        fail(ErrorKind::InvalidPoint, "point is not on the upper sheet of the hyperboloid");
      return;
    }
    case SpaceKind::MetricTree: treegeo::validate(space.tree(), as<TreePoint>(space, p)); return;
  }
}

double distance(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y) {
  switch (space.kind()) {
    case SpaceKind::Euclidean: {
      const auto& a = as<EuclideanVec>(space, x).coords;
      const auto& b = as<EuclideanVec>(space, y).coords;
      check_coords(space, a);
      check_coords(space, b);
      return euclid_norm(a, b);
    }
    case SpaceKind::MaxNormSeq: {
      const auto& a = as<MaxNormVec>(space, x).coords;
      const auto& b = as<MaxNormVec>(space, y).coords;
      check_coords(space, a);
      check_coords(space, b);
      return max_norm_dist(a, b);
    }
    case SpaceKind::HyperbolicPlane:
      validate_point(space, x);
      validate_point(space, y);
      return hyper_dist(as<HyperboloidVec>(space, x).coords, as<HyperboloidVec>(space, y).coords);
    case SpaceKind::MetricTree: {
      const auto& p = as<TreePoint>(space, x);
      const auto& q = as<TreePoint>(space, y);
      treegeo::validate(space.tree(), p);
      treegeo::validate(space.tree(), q);
      return treegeo::distance(space.tree(), p, q);
    }
  }
  return 0.0;
}

SpacePoint combine(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y, double t) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::InvalidParameter, "geodesic parameter must lie in [0, 1]");
  validate_point(space, x);
  validate_point(space, y);
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::MaxNormSeq: {
      std::vector<double> z = coords_of(x);
      const auto& b = coords_of(y);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += t * (b[i] - z[i]);
      return with_coords(space, std::move(z));
    }
    case SpaceKind::HyperbolicPlane: {
      const auto& a = std::get<HyperboloidVec>(x).coords;
      const auto& b = std::get<HyperboloidVec>(y).coords;
      const double d = hyper_dist(a, b);
      Vec3 z;
      if (d < 1e-8) {
        for (int i = 0; i < 3; ++i) z[i] = (1.0 - t) * a[i] + t * b[i];
      } else {
        const double s = std::sinh(d);
        const double wa = std::sinh((1.0 - t) * d) / s, wb = std::sinh(t * d) / s;
        for (int i = 0; i < 3; ++i) z[i] = wa * a[i] + wb * b[i];
      }
      return HyperboloidVec{normalize_hyperboloid(z)};
    }
    case SpaceKind::MetricTree: {
      const auto& tree = space.tree();
      const auto& p = std::get<TreePoint>(x);
      const auto& q = std::get<TreePoint>(y);
      const double d = treegeo::distance(tree, p, q);
      return treegeo::walk(treegeo::path(tree, p, q), t * d);
    }
  }
  return x;
}

SpacePoint midpoint(const SpaceDescriptor& space, const SpacePoint& x, const SpacePoint& y) {
  return combine(space, x, y, 0.5);
}

SpacePoint ray_point(const SpaceDescriptor& space, const SpacePoint& from, const SpacePoint& toward, double rho) {
  if (!(rho >= 0.0)) fail(ErrorKind::InvalidParameter, "ray length must be nonnegative");
  const double d = distance(space, from, toward);
  if (d == 0.0 || rho == 0.0) return from;
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::MaxNormSeq: {
      std::vector<double> z = coords_of(from);
      const auto& b = coords_of(toward);
      const double s = rho / d;
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += s * (b[i] - z[i]);
      return with_coords(space, std::move(z));
    }
    case SpaceKind::HyperbolicPlane: {
      const auto& a = std::get<HyperboloidVec>(from);
      Vec3 u = hyper_direction(a.coords, std::get<HyperboloidVec>(toward).coords);
      for (double& c : u) c *= rho;
      return hyperbolic::exp_map(a, u);
    }
    case SpaceKind::MetricTree:
      return rho >= d ? toward : combine(space, from, toward, rho / d);
  }
  return from;
}

const std::vector<double>& coords_of(const SpacePoint& p) {
  if (const auto* e = std::get_if<EuclideanVec>(&p)) return e->coords;
  if (const auto* m = std::get_if<MaxNormVec>(&p)) return m->coords;
  fail(ErrorKind::InvalidPoint, "point has no linear coordinates");
}

SpacePoint with_coords(const SpaceDescriptor& space, std::vector<double> c) {
  switch (space.kind()) {
    case SpaceKind::Euclidean: return EuclideanVec{std::move(c)};
    case SpaceKind::MaxNormSeq: return MaxNormVec{std::move(c)};
    default: fail(ErrorKind::UnsupportedSpace, "space " + space.name() + " has no linear coordinates");
  }
}

// ---------------------------------------------------------------------------
// Modulus

double modulus(const ModulusSpec& spec, const SpaceDescriptor& space, double r, double eps) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidParameter, "modulus radius must be positive");
  if (!(eps > 0.0 && eps <= 2.0)) fail(ErrorKind::InvalidParameter, "modulus eps must lie in (0, 2]");

  if (spec.form == ModulusSpec::Form::Cat0ClosedForm) {
    if (!space.is_uniformly_convex())
      fail(ErrorKind::UnsupportedSpace, "closed-form modulus needs a uniformly convex space");
    return 1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / 4.0));
  }

  if (spec.samples < 0) fail(ErrorKind::InvalidParameter, "sample count must be nonnegative");
  const std::uint64_t stream = stream_id("modulus");
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.samples; ++i) {
    Rng rng = sample_rng(spec.seed, stream, static_cast<std::uint64_t>(i));
    const SpacePoint a = random_point(space, rng);
    SpacePoint x = a, y = a;
    switch (i % 3) {
      case 0:
        x = random_point_within(space, a, r, rng);
        y = random_point_within(space, a, r, rng);
        break;
      case 1:
        x = random_point_on_sphere(space, a, r, rng);
        y = random_point_on_sphere(space, a, r, rng);
        break;
      default: {
        // Nearly antipodal pair so that large eps is reachable.
        x = random_point_on_sphere(space, a, r, rng);
        const double da = distance(space, x, a);
        y = ray_point(space, x, a, da + r * uniform(rng));
        break;
      }
    }
    const double r_cap = r * (1.0 + 1e-12);
    if (distance(space, x, a) > r_cap || distance(space, y, a) > r_cap) continue;
    if (distance(space, x, y) < eps * r) continue;
    const double d_mid = distance(space, midpoint(space, x, y), a);
    worst = std::min(worst, 1.0 - d_mid / r);
  }
  if (!std::isfinite(worst)) return 1.0;
  return std::clamp(worst - 1e-6, 0.0, 1.0);
}

}  // namespace geoprox
