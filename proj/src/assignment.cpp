#include "jobmatch/assignment.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace jobmatch {

namespace {

using boost::multiprecision::cpp_int;

// Lexicographically ordered cost. Each tier is strictly more important than
// the next, so shortest paths optimize the tiers in priority order without
// scaling one tier into another.
struct LexCost {
  std::int64_t floor = 0;
  std::int64_t card = 0;
  double weight = 0.0;
  std::int64_t kept = 0;
  cpp_int tie = 0;

  LexCost& operator+=(const LexCost& o) {
    floor += o.floor;
    card += o.card;
    weight += o.weight;
    kept += o.kept;
    tie += o.tie;
    return *this;
  }
  friend LexCost operator+(LexCost a, const LexCost& b) { return a += b; }
  LexCost operator-() const { return LexCost{-floor, -card, -weight, -kept, -tie}; }

  friend bool operator<(const LexCost& a, const LexCost& b) {
    if (a.floor != b.floor) return a.floor < b.floor;
    if (a.card != b.card) return a.card < b.card;
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.kept != b.kept) return a.kept < b.kept;
    return a.tie < b.tie;
  }
};

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, int capacity, const LexCost& cost) {
    const std::size_t fwd = arcs_.size();
    arcs_.push_back({to, capacity, cost, fwd + 1});
    arcs_.push_back({from, 0, -cost, fwd});
    adj_[from].push_back(fwd);
    adj_[to].push_back(fwd + 1);
    return fwd;
  }

  int flow(std::size_t arc) const { return arcs_[arcs_[arc].reverse].capacity; }

  // Pushes one unit along the cheapest residual s-t path if that path has
  // negative cost. Returns false when no improving path remains.
  bool augment_cheapest(std::size_t source, std::size_t sink) {
    const std::size_t n = adj_.size();
    std::vector<std::optional<LexCost>> dist(n);
    std::vector<std::size_t> parent(n, 0);
    std::vector<char> queued(n, 0);
    std::vector<std::size_t> visits(n, 0);
    std::deque<std::size_t> queue;
    dist[source] = LexCost{};
    queue.push_back(source);
    queued[source] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      queued[u] = 0;
      for (std::size_t a : adj_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.capacity <= 0) continue;
        LexCost candidate = *dist[u] + arc.cost;
        if (!dist[arc.to] || candidate < *dist[arc.to]) {
          dist[arc.to] = std::move(candidate);
          parent[arc.to] = a;
          if (!queued[arc.to]) {
            if (++visits[arc.to] > n) throw std::logic_error("assignment: negative cycle in residual network");
            queued[arc.to] = 1;
            queue.push_back(arc.to);
          }
        }
      }
    }
    if (!dist[sink] || !(*dist[sink] < LexCost{})) return false;
    for (std::size_t v = sink; v != source;) {
      Arc& arc = arcs_[parent[v]];
      arc.capacity -= 1;
      arcs_[arc.reverse].capacity += 1;
      v = arcs_[arc.reverse].to;
    }
    return true;
  }

 private:
  struct Arc {
    std::size_t to;
    int capacity;
    LexCost cost;
    std::size_t reverse;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adj_;
};

void check_problem(const AssignmentProblem& problem) {
  const std::size_t firms = problem.quotas.size();
  if (!problem.floors.empty() && problem.floors.size() != firms) {
    throw std::invalid_argument("assignment: floors and quotas differ in length");
  }
  for (std::size_t j = 0; j < firms; ++j) {
    const int floor = problem.floors.empty() ? 0 : problem.floors[j];
    if (problem.quotas[j] < 0 || floor < 0 || floor > problem.quotas[j]) {
      throw std::invalid_argument("assignment: floor/quota out of range for firm " + std::to_string(j));
    }
  }
  std::set<std::pair<WorkerIndex, FirmIndex>> seen;
  for (const auto& e : problem.edges) {
    if (e.worker >= problem.worker_count || e.firm >= firms) {
      throw std::invalid_argument("assignment: edge endpoint out of range");
    }
    if (!seen.insert({e.worker, e.firm}).second) throw std::invalid_argument("assignment: duplicate edge");
  }
}

int floor_of(const AssignmentProblem& problem, FirmIndex j) {
  return problem.floors.empty() ? 0 : problem.floors[j];
}

}  // namespace

JobAllocation solve_assignment(const AssignmentProblem& problem) {
  check_problem(problem);
  const std::size_t workers = problem.worker_count;
  const std::size_t firms = problem.quotas.size();
  const std::size_t source = 0;
  const std::size_t sink = workers + firms + 1;
  auto worker_node = [](WorkerIndex i) { return 1 + i; };
  auto firm_node = [workers](FirmIndex j) { return 1 + workers + j; };

  // rank of each edge in (worker, firm) order; rank 0 gets the highest bit
  std::vector<std::size_t> order(problem.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = problem.edges[a];
    const auto& y = problem.edges[b];
    return std::tie(x.worker, x.firm) < std::tie(y.worker, y.firm);
  });
  std::vector<std::size_t> rank(problem.edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;

  FlowNetwork net(sink + 1);
  for (WorkerIndex i = 0; i < workers; ++i) {
    LexCost c;
    c.card = -1;
    net.add_arc(source, worker_node(i), 1, c);
  }
  std::vector<std::size_t> edge_arcs;
  edge_arcs.reserve(problem.edges.size());
  for (std::size_t k = 0; k < problem.edges.size(); ++k) {
    const auto& e = problem.edges[k];
    LexCost c;
    c.weight = -e.weight;
    c.kept = e.previous ? -1 : 0;
    c.tie = -(cpp_int(1) << (problem.edges.size() - 1 - rank[k]));
    edge_arcs.push_back(net.add_arc(worker_node(e.worker), firm_node(e.firm), 1, c));
  }
  std::vector<std::size_t> floor_arcs(firms);
  for (FirmIndex j = 0; j < firms; ++j) {
    const int floor = floor_of(problem, j);
    LexCost c;
    c.floor = -1;
    floor_arcs[j] = net.add_arc(firm_node(j), sink, floor, c);
    net.add_arc(firm_node(j), sink, problem.quotas[j] - floor, LexCost{});
  }

  while (net.augment_cheapest(source, sink)) {
  }

  for (FirmIndex j = 0; j < firms; ++j) {
    if (net.flow(floor_arcs[j]) < floor_of(problem, j)) {
      throw AssignmentInfeasible("assignment: floor of firm " + std::to_string(j) + " (" +
                                 std::to_string(floor_of(problem, j)) + ") cannot be met");
    }
  }

  JobAllocation out(workers, firms);
  for (std::size_t k = 0; k < problem.edges.size(); ++k) {
    if (net.flow(edge_arcs[k]) > 0) out.assign(problem.edges[k].worker, problem.edges[k].firm);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification, written independently of the flow formulation above.

namespace {

std::size_t max_cardinality(const AssignmentProblem& problem) {
  const std::size_t firms = problem.quotas.size();
  std::vector<std::vector<FirmIndex>> adj(problem.worker_count);
  for (const auto& e : problem.edges) adj[e.worker].push_back(e.firm);
  std::vector<std::vector<WorkerIndex>> holds(firms);
  std::vector<std::optional<FirmIndex>> firm_of(problem.worker_count);

  std::vector<char> visited;
  // Kuhn-style augmentation with firm capacities.
  auto try_place = [&](auto&& self, WorkerIndex i) -> bool {
    for (FirmIndex j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (holds[j].size() < static_cast<std::size_t>(problem.quotas[j])) {
        holds[j].push_back(i);
        firm_of[i] = j;
        return true;
      }
      for (std::size_t slot = 0; slot < holds[j].size(); ++slot) {
        const WorkerIndex other = holds[j][slot];
        if (self(self, other)) {
          holds[j][slot] = i;
          firm_of[i] = j;
          return true;
        }
      }
    }
    return false;
  };

  std::size_t matched = 0;
  for (WorkerIndex i = 0; i < problem.worker_count; ++i) {
    visited.assign(firms, 0);
    if (try_place(try_place, i)) ++matched;
  }
  return matched;
}

double allocation_weight(const AssignmentProblem& problem, const JobAllocation& allocation) {
  double sum = 0.0;
  for (const auto& e : problem.edges) {
    if (allocation.matched(e.worker, e.firm)) sum += e.weight;
  }
  return sum;
}

bool respects_bounds(const AssignmentProblem& problem, const JobAllocation& allocation, bool with_floors) {
  for (FirmIndex j = 0; j < problem.quotas.size(); ++j) {
    if (allocation.occupancy(j) > static_cast<std::size_t>(problem.quotas[j])) return false;
    if (with_floors && allocation.occupancy(j) < static_cast<std::size_t>(floor_of(problem, j))) return false;
  }
  return true;
}

std::optional<double> best_weight_by_enumeration(const AssignmentProblem& problem, std::size_t cardinality) {
  const std::size_t m = problem.edges.size();
  std::vector<char> worker_used(problem.worker_count, 0);
  std::vector<int> load(problem.quotas.size(), 0);
  std::optional<double> best;
  auto visit = [&](auto&& self, std::size_t k, std::size_t chosen, double weight) -> void {
    if (chosen + (m - k) < cardinality) return;
    if (k == m) {
      if (chosen != cardinality) return;
      for (FirmIndex j = 0; j < load.size(); ++j) {
        if (load[j] < floor_of(problem, j)) return;
      }
      if (!best || weight > *best) best = weight;
      return;
    }
    const auto& e = problem.edges[k];
    if (!worker_used[e.worker] && load[e.firm] < problem.quotas[e.firm]) {
      worker_used[e.worker] = 1;
      ++load[e.firm];
      self(self, k + 1, chosen + 1, weight + e.weight);
      worker_used[e.worker] = 0;
      --load[e.firm];
    }
    self(self, k + 1, chosen, weight);
  };
  visit(visit, 0, 0, 0.0);
  return best;
}

// Looks for a single-edge replacement or a two-edge firm swap that keeps the
// cardinality and floors but raises the weight.
std::optional<std::string> find_local_improvement(const AssignmentProblem& problem,
                                                  const JobAllocation& allocation) {
  const double base = allocation_weight(problem, allocation);
  std::set<std::pair<WorkerIndex, FirmIndex>> exists;
  for (const auto& e : problem.edges) exists.insert({e.worker, e.firm});

  for (const auto& out_edge : problem.edges) {
    if (!allocation.matched(out_edge.worker, out_edge.firm)) continue;
    for (const auto& in_edge : problem.edges) {
      if (allocation.matched(in_edge.worker, in_edge.firm)) continue;
      JobAllocation alt = allocation;
      alt.unassign(out_edge.worker);
      if (alt.firm_of(in_edge.worker)) continue;
      alt.assign(in_edge.worker, in_edge.firm);
      if (!respects_bounds(problem, alt, true)) continue;
      if (allocation_weight(problem, alt) > base) {
        return "replacing (" + std::to_string(out_edge.worker) + "," + std::to_string(out_edge.firm) + ") by (" +
               std::to_string(in_edge.worker) + "," + std::to_string(in_edge.firm) + ") raises the weight";
      }
    }
  }
  for (WorkerIndex a = 0; a < problem.worker_count; ++a) {
    for (WorkerIndex b = a + 1; b < problem.worker_count; ++b) {
      const auto fa = allocation.firm_of(a);
      const auto fb = allocation.firm_of(b);
      if (!fa || !fb || *fa == *fb) continue;
      if (!exists.count({a, *fb}) || !exists.count({b, *fa})) continue;
      JobAllocation alt = allocation;
      alt.unassign(a);
      alt.unassign(b);
      alt.assign(a, *fb);
      alt.assign(b, *fa);
      if (allocation_weight(problem, alt) > base) {
        return "swapping the firms of workers " + std::to_string(a) + " and " + std::to_string(b) +
               " raises the weight";
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AssignmentReport verify_assignment_conditions(const AssignmentProblem& problem, const JobAllocation& allocation) {
  check_problem(problem);
  AssignmentReport report;
  std::ostringstream detail;

  std::set<std::pair<WorkerIndex, FirmIndex>> exists;
  for (const auto& e : problem.edges) exists.insert({e.worker, e.firm});
  if (allocation.worker_count() != problem.worker_count || allocation.firm_count() != problem.quotas.size()) {
    report.structurally_valid = false;
    report.detail = "allocation dimensions do not match the problem";
    return report;
  }
  for (WorkerIndex i = 0; i < problem.worker_count; ++i) {
    const auto j = allocation.firm_of(i);
    if (j && !exists.count({i, *j})) {
      report.structurally_valid = false;
      detail << "worker " << i << " matched along a missing edge to firm " << *j << "; ";
    }
  }
  if (!respects_bounds(problem, allocation, false)) {
    report.structurally_valid = false;
    detail << "a firm exceeds its quota; ";
  }
  if (!report.structurally_valid) {
    report.detail = detail.str();
    return report;
  }

  for (FirmIndex j = 0; j < problem.quotas.size(); ++j) {
    if (allocation.occupancy(j) < static_cast<std::size_t>(floor_of(problem, j))) {
      report.floors_met = false;
      detail << "X1: firm " << j << " holds " << allocation.occupancy(j) << " < floor " << floor_of(problem, j)
             << "; ";
    }
  }

  // Augmenting paths never lower a firm's load, so the unconstrained maximum
  // equals the maximum among floor-respecting allocations.
  const std::size_t max_card = max_cardinality(problem);
  if (allocation.size() != max_card) {
    report.cardinality_maximal = false;
    detail << "X2: " << allocation.size() << " workers matched, maximum is " << max_card << "; ";
  }

  if (report.floors_met && report.cardinality_maximal) {
    const double weight = allocation_weight(problem, allocation);
    if (problem.edges.size() <= kExhaustiveAssignmentEdges) {
      const auto best = best_weight_by_enumeration(problem, max_card);
      if (best && *best > weight) {
        report.weight_maximal = false;
        detail << "X3: weight " << weight << " < attainable " << *best << "; ";
      }
    } else {
      report.weight_check_exhaustive = false;
      if (auto why = find_local_improvement(problem, allocation)) {
        report.weight_maximal = false;
        detail << "X3: " << *why << "; ";
      }
    }
  }
  report.detail = detail.str();
  return report;
}

}  // namespace jobmatch
