#include "geoprox/json_io.hpp"

#include <fstream>
#include <sstream>

#include "geoprox/errors.hpp"

namespace geoprox {

namespace {

Json points_json(const std::vector<SpacePoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

Json pair_json(const PointPair& pp) { return Json::array({to_json(pp.first), to_json(pp.second)}); }

std::vector<double> flat_matrix(const Json& j) {
  std::vector<double> out;
  for (const auto& row : j) {
    if (row.is_array()) {
      for (const auto& v : row) out.push_back(v.get<double>());
    } else {
      out.push_back(row.get<double>());
    }
  }
  return out;
}

std::vector<int> permutation_from_json(const SpaceDescriptor& space, const Json& j) {
  std::vector<int> out;
  for (const auto& v : j) {
    if (v.is_string()) {
      if (space.kind() != SpaceKind::MetricTree) fail(ErrorKind::InvalidInstance, "vertex ids need a tree space");
      const int idx = space.tree().vertex_index(v.get<std::string>());
      if (idx < 0) fail(ErrorKind::InvalidInstance, "unknown vertex id " + v.get<std::string>());
      out.push_back(idx);
    } else {
      out.push_back(v.get<int>());
    }
  }
  return out;
}

MapStep step_from_json(const SpaceDescriptor& space, const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "identity") return IdentityStep{};
    if (s == "project-other") return ProjectStep{ProjectStep::Target::Other, std::nullopt};
    fail(ErrorKind::InvalidInstance, "unknown map step " + s);
  }
  if (!j.is_object() || j.size() != 1) fail(ErrorKind::InvalidInstance, "map step must be a one-key object");
  const auto& [key, val] = *j.items().begin();
  if (key == "project") {
    if (val.is_string()) {
      const auto t = val.get<std::string>();
      if (t == "other") return ProjectStep{ProjectStep::Target::Other, std::nullopt};
      if (t == "same") return ProjectStep{ProjectStep::Target::Same, std::nullopt};
      fail(ErrorKind::InvalidInstance, "unknown projection target " + t);
    }
    return ProjectStep{ProjectStep::Target::Fixed, set_from_json(space, val)};
  }
  if (key == "isometry") {
    IsometryStep iso;
    if (val.contains("matrix")) iso.matrix = flat_matrix(val.at("matrix"));
    if (val.contains("translation")) iso.translation = val.at("translation").get<std::vector<double>>();
    if (val.contains("permutation")) iso.permutation = permutation_from_json(space, val.at("permutation"));
    return iso;
  }
  if (key == "rotation") {
    return rotation_2d(val.at("angle").get<double>(), val.at("center").get<std::vector<double>>());
  }
  if (key == "reflection") return euclid_reflection(space.dim(), val.at("axis").get<int>());
  if (key == "affine") {
    AffineStep aff;
    aff.matrix = flat_matrix(val.at("matrix"));
    if (val.contains("translation")) aff.translation = val.at("translation").get<std::vector<double>>();
    return aff;
  }
  fail(ErrorKind::InvalidInstance, "unknown map step " + key);
}

std::vector<MapStep> rule_from_json(const SpaceDescriptor& space, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInstance, "rule must be an array");
  std::vector<MapStep> out;
  for (const auto& s : j) out.push_back(step_from_json(space, s));
  return out;
}

}  // namespace

// ---- serialization ----

Json to_json(const SpaceDescriptor& space) {
  Json j;
  j["kind"] = to_string(space.kind());
  switch (space.kind()) {
    case SpaceKind::Euclidean:
    case SpaceKind::MaxNormSeq: j["dim"] = space.dim(); break;
    case SpaceKind::MetricTree: j["tree"] = tree_to_json(space.tree()); break;
    case SpaceKind::HyperbolicPlane: break;
  }
  return j;
}

Json to_json(const SpacePoint& p) {
  struct {
    Json operator()(const EuclideanVec& v) const { return Json{{"kind", "euclidean"}, {"coords", v.coords}}; }
    Json operator()(const HyperboloidVec& v) const { return Json{{"kind", "hyperboloid"}, {"coords", v.coords}}; }
    Json operator()(const TreePoint& v) const { return Json{{"kind", "tree"}, {"edge", v.edge}, {"offset", v.offset}}; }
    Json operator()(const MaxNormVec& v) const { return Json{{"kind", "max-norm"}, {"coords", v.coords}}; }
  } visitor;
  return std::visit(visitor, p);
}

Json to_json(const ConvexSetDescriptor& set) {
  Json j;
  j["type"] = set_type_name(set);
  if (const auto* s = std::get_if<SegmentSet>(&set)) {
    j["a"] = to_json(s->a);
    j["b"] = to_json(s->b);
  } else if (const auto* b = std::get_if<BallSet>(&set)) {
    j["center"] = to_json(b->center);
    j["radius"] = b->radius;
  } else if (const auto* p = std::get_if<PolytopeSet>(&set)) {
    j["vertices"] = points_json(p->vertices);
  } else if (const auto* t = std::get_if<SubtreeHullSet>(&set)) {
    Json g = Json::array();
    for (const auto& q : t->generators) g.push_back(to_json(SpacePoint{q}));
    j["generators"] = g;
  } else if (const auto* js = std::get_if<JamesSliceSet>(&set)) {
    j["radius"] = js->radius;
    j["first_coord"] = js->first_coord;
  }
  return j;
}

Json to_json(const LawReport& r) {
  Json j;
  j["law"] = r.law;
  j["space"] = r.space;
  j["samples_run"] = r.samples_run;
  j["violations"] = r.violations;
  j["worst_margin"] = r.worst_margin;
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  if (r.violations > 0) j["witness"] = points_json(r.witness);
  return j;
}

Json to_json(const ExtentReport& r) {
  Json j;
  j["dist_lower"] = r.dist_lower;
  j["dist_upper"] = r.dist_upper;
  j["diam_lower"] = r.diam_lower;
  j["diam_upper"] = r.diam_upper;
  j["dist_exact"] = r.dist_exact;
  j["diam_exact"] = r.diam_exact;
  j["arg_dist"] = pair_json(r.arg_dist);
  j["arg_diam"] = pair_json(r.arg_diam);
  j["samples"] = r.samples;
  return j;
}

Json to_json(const IterationTrace& tr) {
  Json j;
  j["stopped_reason"] = to_string(tr.stopped_reason);
  j["n_iters"] = tr.n_iters;
  j["final_gap"] = tr.gaps.empty() ? 0.0 : tr.gaps.back();
  if (tr.pair_gap) j["pair_gap"] = *tr.pair_gap;
  if (tr.dist) j["dist"] = *tr.dist;
  j["final_point"] = tr.iterates.empty() ? Json() : to_json(tr.iterates.back());
  j["gaps"] = tr.gaps;
  return j;
}

Json to_json(const PnsWitness& w) {
  Json j;
  j["m1"] = to_json(w.m1);
  j["m2"] = to_json(w.m2);
  j["x_partner"] = to_json(w.x_partner);
  j["y_partner"] = to_json(w.y_partner);
  j["alpha"] = w.alpha;
  j["eps"] = w.eps;
  j["diam"] = w.diam;
  j["delta_m1_h2"] = w.delta_m1_h2;
  j["delta_m2_h1"] = w.delta_m2_h1;
  return j;
}

Json to_json(const ProximalityReport& r) {
  Json j;
  j["proximal"] = r.proximal;
  j["dist"] = r.dist;
  j["checked_a"] = r.checked_a;
  j["checked_b"] = r.checked_b;
  if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
  return j;
}

Json to_json(const MinSetsReport& r) {
  Json j;
  j["status"] = r.status == MinSetsReport::Status::Ok ? "ok" : "empty-witness";
  j["dist"] = r.dist;
  j["attempts"] = r.attempts;
  j["nonempty_expected"] = r.nonempty_expected;
  auto list = [](const std::vector<PointPair>& v) {
    Json arr = Json::array();
    for (const auto& p : v) arr.push_back(Json{{"point", to_json(p.first)}, {"partner", to_json(p.second)}});
    return arr;
  };
  j["a0"] = list(r.a0);
  j["b0"] = list(r.b0);
  return j;
}

Json to_json(const Section5Report& r) {
  Json j;
  j["dist"] = r.dist;
  j["diam"] = r.diam;
  j["pns_surrogate_min"] = r.pns_surrogate_min;
  j["pns_surrogate_bound"] = r.pns_surrogate_bound;
  j["best_prox_gap"] = r.best_prox_gap;
  j["dim"] = r.dim;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  j["dist_witness"] = pair_json(r.dist_witness);
  j["diam_witness"] = pair_json(r.diam_witness);
  j["delta_2e1_a"] = r.delta_2e1_a;
  j["d_2e1_a"] = r.d_2e1_a;
  Json gaps = Json::array();
  for (const auto& g : r.map_gaps)
    gaps.push_back(Json{{"map", g.map}, {"gap_first", g.gap_first}, {"gap_second", g.gap_second}});
  j["map_gaps"] = gaps;
  j["a0_certified"] = r.a0_certified;
  j["surrogate_derivation"] =
      "every x in A has |x|_2 <= sqrt(2), so some tail coordinate x_j <= 1/sqrt(dim-1), "
      "and d(x, 2e1 + 2e_j) >= 2 - x_j";
  j["checks"] = Json{{"dist", r.dist_ok},
                     {"diam", r.diam_ok},
                     {"pns_surrogate", r.surrogate_ok},
                     {"best_proximity", r.best_prox_ok},
                     {"a0_all_of_a", r.a0_ok}};
  j["passed"] = r.passed();
  return j;
}

Json to_json(const MapStep& step) {
  struct {
    Json operator()(const IdentityStep&) const { return "identity"; }
    Json operator()(const ProjectStep& p) const {
      switch (p.target) {
        case ProjectStep::Target::Other: return Json{{"project", "other"}};
        case ProjectStep::Target::Same: return Json{{"project", "same"}};
        case ProjectStep::Target::Fixed: return Json{{"project", to_json(*p.set)}};
      }
      return Json();
    }
    Json operator()(const IsometryStep& s) const {
      Json body = Json::object();
      if (!s.matrix.empty()) body["matrix"] = s.matrix;
      if (!s.translation.empty()) body["translation"] = s.translation;
      if (!s.permutation.empty()) body["permutation"] = s.permutation;
      return Json{{"isometry", body}};
    }
    Json operator()(const AffineStep& s) const {
      Json body{{"matrix", s.matrix}};
      if (!s.translation.empty()) body["translation"] = s.translation;
      return Json{{"affine", body}};
    }
  } visitor;
  return std::visit(visitor, step);
}

Json to_json(const MapDescriptor& map) {
  Json j;
  j["name"] = map.name;
  j["mode"] = to_string(map.mode);
  Json rule = Json::array();
  for (const auto& s : map.rule) rule.push_back(to_json(s));
  j["rule"] = rule;
  if (map.rule_b) {
    Json rb = Json::array();
    for (const auto& s : *map.rule_b) rb.push_back(to_json(s));
    j["rule_b"] = rb;
  }
  return j;
}

// ---- parsing ----

std::shared_ptr<const MetricTree> tree_from_json(const Json& j) {
  try {
    auto ids = j.at("vertices").get<std::vector<std::string>>();
    std::vector<MetricTree::Edge> edges;
    auto index = [&](const std::string& id) {
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return static_cast<int>(i);
      fail(ErrorKind::InvalidParameter, "edge references unknown vertex " + id);
    };
    for (const auto& e : j.at("edges"))
      edges.push_back({index(e.at("a").get<std::string>()), index(e.at("b").get<std::string>()),
                       e.at("len").get<double>()});
    return std::make_shared<const MetricTree>(std::move(ids), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInstance, std::string("malformed tree: ") + e.what());
  }
}

Json tree_to_json(const MetricTree& tree) {
  Json j;
  j["vertices"] = tree.vertex_ids();
  Json edges = Json::array();
  for (const auto& e : tree.edges())
    edges.push_back(Json{{"a", tree.vertex_ids()[static_cast<std::size_t>(e.a)]},
                         {"b", tree.vertex_ids()[static_cast<std::size_t>(e.b)]},
                         {"len", e.length}});
  j["edges"] = edges;
  return j;
}

SpaceDescriptor space_from_json(const Json& j, const std::filesystem::path& base_dir) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") return SpaceDescriptor::euclidean(j.at("dim").get<int>());
    if (kind == "hyperbolic-plane") return SpaceDescriptor::hyperbolic_plane();
    if (kind == "max-norm-seq") return SpaceDescriptor::max_norm_seq(j.at("dim").get<int>());
    if (kind == "metric-tree") {
      if (j.contains("tree")) return SpaceDescriptor::metric_tree(tree_from_json(j.at("tree")));
      const auto path = base_dir / j.at("tree_file").get<std::string>();
      std::ifstream in(path);
      if (!in) fail(ErrorKind::InvalidInstance, "cannot read tree file " + path.string());
      return SpaceDescriptor::metric_tree(tree_from_json(Json::parse(in)));
    }
    fail(ErrorKind::InvalidInstance, "unknown space kind " + kind);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInstance, std::string("malformed space: ") + e.what());
  }
}

SpacePoint point_from_json(const SpaceDescriptor& space, const Json& j) {
  SpacePoint p;
  try {
    if (space.kind() == SpaceKind::MetricTree) {
      if (!j.is_object()) fail(ErrorKind::InvalidPoint, "tree points are objects");
      if (j.contains("vertex")) {
        const int v = space.tree().vertex_index(j.at("vertex").get<std::string>());
        if (v < 0) fail(ErrorKind::InvalidPoint, "unknown vertex");
        p = space.tree().vertex_point(v);
      } else {
        p = TreePoint{j.at("edge").get<int>(), j.at("offset").get<double>()};
      }
    } else {
      const Json& c = j.is_array() ? j : j.at("coords");
      const auto coords = c.get<std::vector<double>>();
      if (space.kind() == SpaceKind::HyperbolicPlane) {
        if (coords.size() != 3) fail(ErrorKind::InvalidPoint, "hyperboloid points have 3 coordinates");
        p = hyper(coords[0], coords[1], coords[2]);
      } else {
        p = with_coords(space, coords);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidPoint, std::string("malformed point: ") + e.what());
  }
  validate_point(space, p);
  return p;
}

ConvexSetDescriptor set_from_json(const SpaceDescriptor& space, const Json& j) {
  ConvexSetDescriptor set;
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "segment") {
      set = SegmentSet{point_from_json(space, j.at("a")), point_from_json(space, j.at("b"))};
    } else if (type == "ball") {
      set = BallSet{point_from_json(space, j.at("center")), j.at("radius").get<double>()};
    } else if (type == "polytope") {
      PolytopeSet p;
      for (const auto& v : j.at("vertices")) p.vertices.push_back(point_from_json(space, v));
      set = p;
    } else if (type == "subtree") {
      SubtreeHullSet s;
      for (const auto& g : j.at("generators")) s.generators.push_back(std::get<TreePoint>(point_from_json(space, g)));
      set = s;
    } else if (type == "james-slice") {
      set = make_james_slice(j.at("radius").get<double>(), j.at("first_coord").get<double>());
    } else {
      fail(ErrorKind::InvalidSet, "unknown set type " + type);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidSet, std::string("malformed set: ") + e.what());
  }
  validate_set(space, set);
  return set;
}

const ConvexSetDescriptor& Instance::set(const std::string& name) const {
  for (const auto& s : sets)
    if (s.name == name) return s.set;
  fail(ErrorKind::InvalidInstance, "unknown set " + name);
}

const PairDescriptor& Instance::pair(const std::string& name) const {
  for (const auto& p : pairs)
    if (p.name == name) return p.pair;
  fail(ErrorKind::InvalidInstance, "unknown pair " + name);
}

const MapDescriptor& Instance::map(const std::string& name) const {
  for (const auto& m : maps)
    if (m.name == name) return m;
  fail(ErrorKind::InvalidInstance, "unknown map " + name);
}

Instance instance_from_json(const Json& j, const std::filesystem::path& base_dir) {
  try {
    if (!j.is_object()) fail(ErrorKind::InvalidInstance, "instance must be an object");
    if (j.value("v", 0) != 1) fail(ErrorKind::InvalidInstance, "unsupported schema version (expected \"v\": 1)");
    Instance inst;
    inst.space = space_from_json(j.at("space"), base_dir);
    inst.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("sets")) {
      for (const auto& [name, s] : j.at("sets").items()) inst.sets.push_back({name, set_from_json(inst.space, s)});
    }
    if (j.contains("pairs")) {
      for (const auto& p : j.at("pairs")) {
        PairDescriptor pd{inst.space, inst.set(p.at("a").get<std::string>()), inst.set(p.at("b").get<std::string>()),
                          Sampler{p.value("samples", 2000), p.value("seed", inst.seed)}};
        validate_pair(pd);
        inst.pairs.push_back({p.at("name").get<std::string>(), std::move(pd)});
      }
    }
    if (j.contains("maps")) {
      for (const auto& m : j.at("maps")) {
        const auto mode = m.at("mode").get<std::string>();
        if (mode != "cyclic" && mode != "noncyclic") fail(ErrorKind::InvalidInstance, "unknown map mode " + mode);
        MapDescriptor md{m.at("name").get<std::string>(), mode == "cyclic" ? MapMode::Cyclic : MapMode::Noncyclic,
                         rule_from_json(inst.space, m.at("rule")), std::nullopt,
                         inst.pair(m.at("pair").get<std::string>())};
        if (m.contains("rule_b")) md.rule_b = rule_from_json(inst.space, m.at("rule_b"));
        validate_map(md);
        inst.maps.push_back(std::move(md));
      }
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInstance, std::string("malformed instance: ") + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInstance, "cannot read instance file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInstance, std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j, path.parent_path());
}

std::string trace_jsonl(const IterationTrace& tr) {
  std::ostringstream out;
  for (std::size_t n = 0; n < tr.iterates.size(); ++n)
    out << Json{{"n", n}, {"point", to_json(tr.iterates[n])}, {"gap", tr.gaps[n]}}.dump() << '\n';
  return out.str();
}

std::string trace_csv(const IterationTrace& tr) {
  std::ostringstream out;
  out.precision(17);
  out << "n,gap\n";
  for (std::size_t n = 0; n < tr.gaps.size(); ++n) out << n << ',' << tr.gaps[n] << '\n';
  return out.str();
}

}  // namespace geoprox
