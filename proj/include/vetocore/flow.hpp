#pragma once

#include <vector>

#include "vetocore/rational.hpp"

namespace vetocore {

struct FlowEdge {
  int from = 0;
  int to = 0;
  Rational capacity;     // ignored when infinite
  bool infinite = false;
};

struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<FlowEdge> edges;
};

struct MaxFlowResult {
  Rational value;
  // Residual reachability from the source after the max flow; defines the
  // canonical min cut (edges leaving this set are the cut).
  std::vector<bool> source_side;
};

// Dinic's algorithm. Capacities are scaled by the LCM of their denominators
// to exact big integers, so the returned value is exact. Infinite edges get
// a capacity exceeding the total finite capacity and are never cut.
MaxFlowResult max_flow(const FlowNetwork& network);

}  // namespace vetocore
