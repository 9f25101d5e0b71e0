#pragma once

// JSON forms of points, sets, maps, instance files and reports.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "geoprox/laws.hpp"
#include "geoprox/maps.hpp"
#include "geoprox/pairs.hpp"
#include "geoprox/section5.hpp"
#include "geoprox/solvers.hpp"

namespace geoprox {

using Json = nlohmann::ordered_json;

Json to_json(const SpaceDescriptor& space);
Json to_json(const SpacePoint& p);
Json to_json(const ConvexSetDescriptor& set);
Json to_json(const LawReport& r);
Json to_json(const ExtentReport& r);
Json to_json(const IterationTrace& tr);
Json to_json(const PnsWitness& w);
Json to_json(const ProximalityReport& r);
Json to_json(const MinSetsReport& r);
Json to_json(const Section5Report& r);
Json to_json(const MapStep& step);
Json to_json(const MapDescriptor& map);

// Tree file: {"vertices": [id...], "edges": [{"a": id, "b": id, "len": real}...]}.
std::shared_ptr<const MetricTree> tree_from_json(const Json& j);
Json tree_to_json(const MetricTree& tree);

// Relative "tree_file" paths resolve against base_dir.
SpaceDescriptor space_from_json(const Json& j, const std::filesystem::path& base_dir = {});

// Accepts {"kind": ..., "coords": [...]}, {"edge": e, "offset": o}, {"vertex": id}
// or a bare coordinate array. Throws InvalidPoint.
SpacePoint point_from_json(const SpaceDescriptor& space, const Json& j);

ConvexSetDescriptor set_from_json(const SpaceDescriptor& space, const Json& j);

struct NamedSet {
  std::string name;
  ConvexSetDescriptor set;
};

struct NamedPair {
  std::string name;
  PairDescriptor pair;
};

struct Instance {
  SpaceDescriptor space = SpaceDescriptor::euclidean(1);
  std::vector<NamedSet> sets;
  std::vector<NamedPair> pairs;
  std::vector<MapDescriptor> maps;
  std::uint64_t seed = 0;

  const ConvexSetDescriptor& set(const std::string& name) const;
  const PairDescriptor& pair(const std::string& name) const;
  const MapDescriptor& map(const std::string& name) const;
};

// Throws InvalidInstance (schema) or the descriptor errors of the parts.
Instance instance_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Instance load_instance(const std::filesystem::path& path);

// One JSON object per iterate: {"n", "point", "gap"}.
std::string trace_jsonl(const IterationTrace& tr);
// Header "n,gap" then one row per iterate.
std::string trace_csv(const IterationTrace& tr);

}  // namespace geoprox
