#pragma once

// The max-norm pair (A, B) of slices that lacks proximal normal structure
// yet still has best proximity points, truncated to finite dimension.

#include <cstdint>
#include <string>
#include <vector>

#include "geoprox/maps.hpp"

namespace geoprox {

struct JamesInstance {
  int dim = 0;
  SpaceDescriptor space;
  JamesSliceSet a;  // radius 1, first coordinate 1
  JamesSliceSet b;  // radius 2, first coordinate 2

  PairDescriptor pair(int n_samples = 2000, std::uint64_t seed = 0) const;
  SpacePoint unit(int i, double scale = 1.0) const;  // scale * e_{i+1}
};

// Throws InvalidParameter when dim < 3.
JamesInstance build_instance(int dim);

// Cyclic relatively nonexpansive maps on this pair, built from the map grammar.
std::vector<MapDescriptor> section5_cyclic_maps(const JamesInstance& inst);

// Polytope pair conv{e1 + e_n}, conv{2e1 + 2e_n} (n >= 2).
PairDescriptor remark_pair(int dim);

struct MapGapCheck {
  std::string map;
  double gap_first = 0.0;   // d(2e1, T 2e1)
  double gap_second = 0.0;  // d(T 2e1, T^2 2e1)
};

struct Section5Report {
  int dim = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;

  double dist = 0.0;
  PointPair dist_witness;
  bool dist_exact = false;
  double diam = 0.0;
  PointPair diam_witness;
  bool diam_exact = false;

  double pns_surrogate_min = 0.0;
  double pns_surrogate_bound = 0.0;

  double delta_2e1_a = 0.0;  // sup distance from 2e1 to A
  double d_2e1_a = 0.0;      // distance from 2e1 to A
  std::vector<MapGapCheck> map_gaps;
  double best_prox_gap = 0.0;  // largest gap seen at 2e1 over the corpus maps

  int a0_certified = 0;  // sampled x in A with x + e1 in B at distance 1

  bool dist_ok = false;
  bool diam_ok = false;
  bool surrogate_ok = false;
  bool best_prox_ok = false;
  bool a0_ok = false;

  bool passed() const { return dist_ok && diam_ok && surrogate_ok && best_prox_ok && a0_ok; }
};

Section5Report verify_section5(const JamesInstance& inst, int n_samples, std::uint64_t seed, double tol);

}  // namespace geoprox
