#include "geoprox/cli.hpp"

#include <CLI11.hpp>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

#include "geoprox/errors.hpp"
#include "geoprox/json_io.hpp"

namespace geoprox {

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Common {
  std::string out_path;
  bool no_timestamp = false;
};

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Throws std::runtime_error on I/O failure.
void emit(Json doc, const Common& c, std::ostream& out) {
  if (!c.no_timestamp) doc["timestamp"] = utc_timestamp();
  const std::string text = doc.dump(2) + "\n";
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path);
  if (!f || !(f << text)) throw std::runtime_error("cannot write " + c.out_path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f || !(f << text)) throw std::runtime_error("cannot write " + path);
}

SpacePoint parse_point(const SpaceDescriptor& space, const std::string& literal) {
  Json j;
  try {
    j = Json::parse(literal);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidPoint, std::string("--x0 is not JSON: ") + e.what());
  }
  return point_from_json(space, j);
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WrongMode:
    case ErrorKind::OutOfDomain:
    case ErrorKind::NoConvergence:
    case ErrorKind::DegenerateInput: return kCheckFailed;
    default: return kUsage;
  }
}

// ---- verify ----

struct VerifyArgs {
  std::string instance;
  std::vector<std::string> laws;
  std::vector<std::string> expect_fail;
  std::vector<std::string> maps;
  bool upgrade = false;
  int samples = 10000;
  std::optional<std::uint64_t> seed;
  double tol = 1e-9;
};

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto inst = load_instance(a.instance);
  const std::uint64_t seed = a.seed.value_or(inst.seed);

  std::vector<LawId> laws;
  auto add = [&](const std::string& name) {
    const auto id = parse_law(name);
    if (!id) fail(ErrorKind::InvalidParameter, "unknown law " + name);
    if (std::find(laws.begin(), laws.end(), *id) == laws.end()) laws.push_back(*id);
  };
  for (const auto& l : a.laws) add(l);
  for (const auto& l : a.expect_fail) add(l);
  if (laws.empty() && a.maps.empty())
    for (LawId l : kAllLaws)
      if (law_supported(inst.space, l)) laws.push_back(l);

  Json reports = Json::array();
  bool ok = true;
  for (LawId l : laws) {
    const auto r = verify_law(inst.space, l, a.samples, seed, a.tol);
    const bool expect_fail =
        std::find(a.expect_fail.begin(), a.expect_fail.end(), std::string(law_name(l))) != a.expect_fail.end();
    const bool as_expected = expect_fail ? r.violations > 0 : r.violations == 0;
    if (!as_expected) {
      ok = false;
      err << "unexpected outcome for " << law_name(l) << ": " << r.violations << " violations\n";
    }
    auto j = to_json(r);
    j["expected"] = expect_fail ? "fail" : "pass";
    reports.push_back(j);
  }
  for (const auto& name : a.maps) {
    const auto r = check_rel_nonexpansive(inst.map(name), a.samples, seed, a.tol, a.upgrade);
    if (!r.passed()) {
      ok = false;
      err << "map " << name << " is not relatively nonexpansive on the samples\n";
    }
    auto j = to_json(r);
    j["map"] = name;
    j["upgrade_mode"] = a.upgrade;
    j["expected"] = "pass";
    reports.push_back(j);
  }

  Json doc;
  doc["command"] = "verify";
  doc["space"] = inst.space.name();
  doc["samples"] = a.samples;
  doc["seed"] = seed;
  doc["tol"] = a.tol;
  doc["reports"] = reports;
  doc["ok"] = ok;
  emit(doc, c, out);
  return ok ? kOk : kCheckFailed;
}

// ---- solve ----

struct SolveArgs {
  std::string instance;
  std::string map;
  std::string x0;
  std::string mode;
  double eps = 1e-6;
  int max_iter = 10000;
  std::string trace_jsonl_path;
  std::string trace_csv_path;
};

int cmd_solve(const SolveArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto inst = load_instance(a.instance);
  const auto& map = inst.map(a.map);
  if (!a.mode.empty() && a.mode != to_string(map.mode))
    fail(ErrorKind::WrongMode, "map " + a.map + " is " + std::string(to_string(map.mode)) + ", not " + a.mode);
  const auto x0 = parse_point(inst.space, a.x0);
  const auto tr = map.mode == MapMode::Cyclic ? cyclic_iterate(map, x0, a.eps, a.max_iter)
                                              : midpoint_iterate(map, x0, a.eps, a.max_iter);
  if (!a.trace_jsonl_path.empty()) write_file(a.trace_jsonl_path, trace_jsonl(tr));
  if (!a.trace_csv_path.empty()) write_file(a.trace_csv_path, trace_csv(tr));

  Json doc;
  doc["command"] = "solve";
  doc["map"] = a.map;
  doc["mode"] = to_string(map.mode);
  doc["eps"] = a.eps;
  doc["max_iter"] = a.max_iter;
  doc["x0"] = to_json(x0);
  doc["trace"] = to_json(tr);
  emit(doc, c, out);
  if (tr.stopped_reason != StopReason::GapBelowEps) {
    err << "solver stopped: " << to_string(tr.stopped_reason) << "\n";
    return kCheckFailed;
  }
  return kOk;
}

// ---- section5 ----

struct Section5Args {
  int dim = 8;
  int samples = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

int cmd_section5(const Section5Args& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto inst = build_instance(a.dim);
  const auto r = verify_section5(inst, a.samples, a.seed, a.tol);
  auto doc = to_json(r);
  emit(doc, c, out);
  if (!r.passed()) {
    err << "slice pair checks failed\n";
    return kCheckFailed;
  }
  return kOk;
}

// ---- extents / project ----

int cmd_extents(const std::string& instance, const std::string& pair_name, double tol, const Common& c,
                std::ostream& out) {
  const auto inst = load_instance(instance);
  if (pair_name.empty() && inst.pairs.empty()) fail(ErrorKind::InvalidInstance, "instance defines no pairs");
  const std::string name = pair_name.empty() ? inst.pairs.front().name : pair_name;
  const auto& pair = inst.pair(name);
  Json doc;
  doc["command"] = "extents";
  doc["pair"] = name;
  doc["extents"] = to_json(pair_extents(pair));
  doc["proximality"] = to_json(is_proximal(pair, tol));
  emit(doc, c, out);
  return kOk;
}

int cmd_project(const std::string& instance, const std::string& set_name, const std::string& x0, const Common& c,
                std::ostream& out) {
  const auto inst = load_instance(instance);
  const auto& set = inst.set(set_name);
  const auto x = parse_point(inst.space, x0);
  if (!can_project(inst.space, set))
    fail(ErrorKind::UnsupportedSpace, "no projection onto " + set_name + " in " + inst.space.name());
  const auto p = project(inst.space, set, x);
  Json doc;
  doc["command"] = "project";
  doc["set"] = set_name;
  doc["point"] = to_json(x);
  doc["projection"] = to_json(p);
  doc["distance"] = distance(inst.space, x, p);
  emit(doc, c, out);
  return kOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_path, "Write the report here instead of standard output");
  sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp field");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"geoprox: geodesic metric spaces, projections and best proximity points"};
  app.require_subcommand(1);
  Common common;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check metric laws and map properties by sampling");
  verify->add_option("--instance", va.instance, "Instance file")->required();
  verify->add_option("--law", va.laws, "Law to check (repeatable)");
  verify->add_option("--expect-fail", va.expect_fail, "Law expected to show violations (repeatable)");
  verify->add_option("--map", va.maps, "Map to check for relative nonexpansiveness (repeatable)");
  verify->add_flag("--upgrade", va.upgrade, "Also check pairs drawn from the same set");
  verify->add_option("--samples", va.samples, "Samples per check")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", va.seed, "Seed (defaults to the instance seed)");
  verify->add_option("--tol", va.tol, "Tolerance")->check(CLI::NonNegativeNumber);
  add_common(verify, common);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Run the fixed-point or best-proximity iteration of a map");
  solve->add_option("--instance", sa.instance, "Instance file")->required();
  solve->add_option("--map", sa.map, "Map name")->required();
  solve->add_option("--x0", sa.x0, "Start point as a JSON literal")->required();
  solve->add_option("--mode", sa.mode, "Expected map mode")->check(CLI::IsMember({"cyclic", "noncyclic"}));
  solve->add_option("--eps", sa.eps, "Stopping tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", sa.max_iter, "Iteration budget")->check(CLI::NonNegativeNumber);
  solve->add_option("--trace-jsonl", sa.trace_jsonl_path, "Write iterates as JSON lines");
  solve->add_option("--trace-csv", sa.trace_csv_path, "Write (n, gap) as CSV");
  add_common(solve, common);

  Section5Args s5;
  auto* sec5 = app.add_subcommand("section5", "Reproduce the max-norm slice pair checks");
  sec5->add_option("--dim", s5.dim, "Truncation dimension (>= 3)");
  sec5->add_option("--samples", s5.samples, "Samples from A")->check(CLI::NonNegativeNumber);
  sec5->add_option("--seed", s5.seed, "Seed");
  sec5->add_option("--tol", s5.tol, "Tolerance")->check(CLI::NonNegativeNumber);
  add_common(sec5, common);

  std::string ext_instance, ext_pair;
  double ext_tol = 1e-9;
  auto* extents = app.add_subcommand("extents", "dist / diameter extents and proximality of a pair");
  extents->add_option("--instance", ext_instance, "Instance file")->required();
  extents->add_option("--pair", ext_pair, "Pair name (defaults to the first pair)");
  extents->add_option("--tol", ext_tol, "Tolerance")->check(CLI::NonNegativeNumber);
  add_common(extents, common);

  std::string proj_instance, proj_set, proj_x;
  auto* proj = app.add_subcommand("project", "Metric projection of a point onto a set");
  proj->add_option("--instance", proj_instance, "Instance file")->required();
  proj->add_option("--set", proj_set, "Set name")->required();
  proj->add_option("--x0", proj_x, "Point as a JSON literal")->required();
  add_common(proj, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(va, common, out, err);
    if (*solve) return cmd_solve(sa, common, out, err);
    if (*sec5) return cmd_section5(s5, common, out, err);
    if (*extents) return cmd_extents(ext_instance, ext_pair, ext_tol, common, out);
    if (*proj) return cmd_project(proj_instance, proj_set, proj_x, common, out);
  } catch (const GeoError& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace geoprox
