#include "vetocore/flow.hpp"

#include <limits>
#include <queue>
#include <vector>

namespace vetocore {

namespace {

// Dinic over big-integer capacities. Edges are stored in pairs (id ^ 1 is
// the reverse edge), capacities as remaining residuals.
class Dinic {
 public:
  explicit Dinic(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

  void add_edge(int from, int to, Integer capacity) {
    edges_.push_back({to, head_[from], std::move(capacity)});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], Integer(0)});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  Integer run(int source, int sink) {
    Integer total = 0;
    while (bfs(source, sink)) {
      it_ = head_;
      for (;;) {
        Integer pushed = dfs(source, sink, Integer(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Residual reachability from `source`; call after run().
  std::vector<bool> reachable(int source) const {
    std::vector<bool> seen(head_.size(), false);
    std::queue<int> queue;
    seen[source] = true;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int e = head_[u]; e >= 0; e = edges_[e].next) {
        if (edges_[e].residual > 0 && !seen[edges_[e].to]) {
          seen[edges_[e].to] = true;
          queue.push(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    int next;
    Integer residual;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int e = head_[u]; e >= 0; e = edges_[e].next) {
        if (edges_[e].residual > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          queue.push(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // limit < 0 means unconstrained.
  Integer dfs(int u, int sink, Integer limit) {
    if (u == sink) return limit < 0 ? Integer(-1) : limit;
    for (int& e = it_[u]; e >= 0; e = edges_[e].next) {
      Edge& edge = edges_[e];
      if (edge.residual <= 0 || level_[edge.to] != level_[u] + 1) continue;
      Integer cap = edge.residual;
      if (limit >= 0 && limit < cap) cap = limit;
      Integer pushed = dfs(edge.to, sink, cap);
      if (pushed < 0) pushed = cap;  // sink reached with no tighter bound
      if (pushed > 0) {
        edge.residual -= pushed;
        edges_[e ^ 1].residual += pushed;
        return pushed;
      }
      level_[edge.to] = -1;  // dead end
    }
    return Integer(0);
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& network) {
  if (network.node_count < 2 || network.source == network.sink ||
      network.source < 0 || network.source >= network.node_count ||
      network.sink < 0 || network.sink >= network.node_count)
    throw Error("malformed flow network");

  // Common denominator for all finite capacities.
  Integer denom_lcm = 1;
  for (const auto& e : network.edges) {
    if (e.infinite) continue;
    if (e.capacity < 0) throw Error("negative capacity");
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
            e.capacity.get_den().get_mpz_t());
  }

  Integer finite_total = 0;
  std::vector<Integer> scaled(network.edges.size(), Integer(0));
  for (size_t i = 0; i < network.edges.size(); ++i) {
    const auto& e = network.edges[i];
    if (e.infinite) continue;
    Rational s = e.capacity * denom_lcm;
    scaled[i] = s.get_num();  // exact: denominator divides the lcm
    finite_total += scaled[i];
  }
  const Integer infinite_cap = finite_total + 1;

  Dinic dinic(network.node_count);
  for (size_t i = 0; i < network.edges.size(); ++i) {
    const auto& e = network.edges[i];
    if (e.from < 0 || e.from >= network.node_count || e.to < 0 ||
        e.to >= network.node_count)
      throw Error("edge endpoint outside network");
    dinic.add_edge(e.from, e.to, e.infinite ? infinite_cap : scaled[i]);
  }

  Integer flow = dinic.run(network.source, network.sink);
  MaxFlowResult result;
  result.value = Rational(flow, denom_lcm);
  result.value.canonicalize();
  result.source_side = dinic.reachable(network.source);
  return result;
}

}  // namespace vetocore
