#pragma once

#include <vector>

#include "geoprox/space.hpp"

namespace geoprox::treegeo {

// A straight run along one edge, from offset `from` to offset `to`.
struct EdgePiece {
  int edge = 0;
  double from = 0.0;
  double to = 0.0;
  double length() const { return from < to ? to - from : from - to; }
};

double distance(const MetricTree& tree, const TreePoint& p, const TreePoint& q);

// The unique geodesic from p to q as consecutive edge pieces.
std::vector<EdgePiece> path(const MetricTree& tree, const TreePoint& p, const TreePoint& q);

// Point at arc length s along a piece sequence (clamped to its ends).
TreePoint walk(const std::vector<EdgePiece>& pieces, double s);

void validate(const MetricTree& tree, const TreePoint& p);

}  // namespace geoprox::treegeo
