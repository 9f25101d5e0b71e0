#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "geoprox/json_io.hpp"

namespace geoprox::testing {

inline std::string data_path(const std::string& rel) { return std::string(GEOPROX_DATA_DIR) + "/" + rel; }

inline SpaceDescriptor tree_space(const std::string& file) {
  return space_from_json(Json{{"kind", "metric-tree"}, {"tree_file", file}}, data_path("trees"));
}

inline SpaceDescriptor star_tree() { return tree_space("star.json"); }
inline SpaceDescriptor caterpillar_tree() { return tree_space("caterpillar.json"); }

inline TreePoint vertex(const SpaceDescriptor& sp, const std::string& id) {
  return sp.tree().vertex_point(sp.tree().vertex_index(id));
}

// Tree distance by Dijkstra on the graph with p and q spliced in as extra nodes.
inline double tree_distance_oracle(const MetricTree& tree, const TreePoint& p, const TreePoint& q) {
  const int n = tree.vertex_count();
  const int P = n, Q = n + 1;
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n + 2));
  auto link = [&](int u, int v, double w) {
    adj[static_cast<std::size_t>(u)].push_back({v, w});
    adj[static_cast<std::size_t>(v)].push_back({u, w});
  };
  for (int e = 0; e < tree.edge_count(); ++e) {
    const auto& ed = tree.edge(e);
    std::vector<std::pair<double, int>> stops{{0.0, ed.a}, {ed.length, ed.b}};
    if (p.edge == e) stops.push_back({p.offset, P});
    if (q.edge == e) stops.push_back({q.offset, Q});
    std::sort(stops.begin(), stops.end());
    for (std::size_t i = 0; i + 1 < stops.size(); ++i)
      link(stops[i].second, stops[i + 1].second, stops[i + 1].first - stops[i].first);
  }
  std::vector<double> dist(static_cast<std::size_t>(n + 2), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(P)] = 0.0;
  pq.push({0.0, P});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (auto [v, w] : adj[static_cast<std::size_t>(u)])
      if (d + w < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = d + w;
        pq.push({d + w, v});
      }
  }
  return dist[static_cast<std::size_t>(Q)];
}

inline std::vector<double> coords(const SpacePoint& p) { return coords_of(p); }

inline double max_norm_oracle(const std::vector<double>& v) {
  double inf = 0.0, sq = 0.0;
  for (double x : v) {
    inf = std::max(inf, std::abs(x));
    sq += x * x;
  }
  return std::max(inf, std::sqrt(sq) / std::sqrt(2.0));
}

inline SpacePoint e2(double x, double y) { return euclid({x, y}); }

inline PolytopeSet rectangle(double x0, double x1, double y0, double y1) {
  return PolytopeSet{{e2(x0, y0), e2(x1, y0), e2(x1, y1), e2(x0, y1)}};
}

}  // namespace geoprox::testing
