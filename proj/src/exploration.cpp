#include "critgraph/exploration.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace critgraph {

namespace {

enum class Status : std::uint8_t { Unseen, Active, Explored };

using MinHeap =
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<Vertex>>;

// Smallest-labeled unseen neighbor, if any.
std::optional<Vertex> first_unseen_neighbor(const Graph& g, Vertex u,
                                            const std::vector<Status>& status) {
  for (Vertex v : g.neighbors(u)) {
    if (status[v] == Status::Unseen) return v;
  }
  return std::nullopt;
}

}  // namespace

ExplorationTrace explore(const Graph& g, Vertex start,
                         const ExploreOptions& options) {
  const Vertex n = g.vertex_count();
  if (start >= n) throw std::invalid_argument("explore: start out of range");

  ExplorationTrace trace;
  trace.start = start;
  trace.full_sweep = options.full_sweep;

  std::vector<Status> status(n, Status::Unseen);
  MinHeap active;

  if (g.degree(start) == 0) {
    trace.component_sizes.push_back(1);
    if (!options.full_sweep) {
      trace.halted_isolated = true;
      return trace;
    }
    status[start] = Status::Explored;
    trace.active.push_back(0);  // nothing active at time 0
  }

  std::uint32_t y = 0;                  // current active count
  std::uint32_t activated_in_comp = 0;  // vertices activated since restart
  Vertex cursor = 0;                    // smallest possibly-unseen label
  bool in_component = false;

  if (status[start] == Status::Unseen) {
    // Seed the first component: start plus its smallest-labeled neighbor.
    const Vertex mate = g.neighbors(start)[0];
    status[start] = Status::Active;
    status[mate] = Status::Active;
    active.push(start);
    active.push(mate);
    y = 2;
    activated_in_comp = 2;
    in_component = true;
    trace.active.push_back(y);  // Y_0 = 2
  }

  std::uint64_t steps = 0;
  const std::uint64_t max_steps =
      options.max_steps.value_or(std::numeric_limits<std::uint64_t>::max());

  for (;;) {
    if (!in_component) {
      // Restart: scan for the smallest unseen vertex, recording isolated
      // ones as size-1 components as they are passed over.
      bool seeded = false;
      while (cursor < n) {
        if (status[cursor] != Status::Unseen) {
          ++cursor;
          continue;
        }
        if (g.degree(cursor) == 0) {
          status[cursor] = Status::Explored;
          trace.component_sizes.push_back(1);
          ++cursor;
          continue;
        }
        if (steps >= max_steps) {
          trace.truncated = true;
          return trace;
        }
        // Activate the vertex and one unseen neighbor; this consumes a
        // step with eta = 2 and no vertex explored, mirroring the seed.
        const Vertex u = cursor;
        const Vertex v = *first_unseen_neighbor(g, u, status);
        status[u] = Status::Active;
        status[v] = Status::Active;
        active.push(u);
        active.push(v);
        y = 2;
        activated_in_comp = 2;
        ++steps;
        trace.eta.push_back(2);
        trace.active.push_back(y);
        seeded = true;
        in_component = true;
        break;
      }
      if (!seeded) return trace;  // everything explored
    }

    while (y > 0) {
      if (steps >= max_steps) {
        trace.truncated = true;
        return trace;
      }
      const Vertex u = active.top();
      active.pop();
      std::uint32_t eta = 0;
      for (Vertex w : g.neighbors(u)) {
        if (status[w] == Status::Unseen) {
          status[w] = Status::Active;
          active.push(w);
          ++eta;
        }
      }
      status[u] = Status::Explored;
      y += eta;
      --y;
      ++steps;
      trace.eta.push_back(eta);
      trace.active.push_back(y);
      activated_in_comp += eta;
    }

    trace.component_sizes.push_back(activated_in_comp);
    in_component = false;
    if (!options.full_sweep) return trace;
  }
}

bool component_exceeds(const Graph& g, Vertex start, std::uint64_t k) {
  const Vertex n = g.vertex_count();
  if (start >= n)
    throw std::invalid_argument("component_exceeds: start out of range");
  if (k == 0) return true;  // every component has at least one vertex
  if (g.degree(start) == 0) return false;

  std::vector<Status> status(n, Status::Unseen);
  MinHeap active;
  const Vertex mate = g.neighbors(start)[0];
  status[start] = Status::Active;
  status[mate] = Status::Active;
  active.push(start);
  active.push(mate);
  std::uint32_t y = 2;

  for (std::uint64_t t = 1; t <= k; ++t) {
    const Vertex u = active.top();
    active.pop();
    for (Vertex w : g.neighbors(u)) {
      if (status[w] == Status::Unseen) {
        status[w] = Status::Active;
        active.push(w);
        ++y;
      }
    }
    status[u] = Status::Explored;
    --y;
    if (y == 0) return false;  // component exhausted at size t <= k
  }
  return true;
}

std::vector<std::uint32_t> component_sizes_bfs(const Graph& g) {
  const Vertex n = g.vertex_count();
  std::vector<std::uint32_t> sizes;
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (visited[s]) continue;
    visited[s] = 1;
    queue.clear();
    queue.push_back(s);
    std::size_t head = 0;
    while (head < queue.size()) {
      const Vertex u = queue[head++];
      for (Vertex v : g.neighbors(u)) {
        if (!visited[v]) {
          visited[v] = 1;
          queue.push_back(v);
        }
      }
    }
    sizes.push_back(static_cast<std::uint32_t>(queue.size()));
  }
  return sizes;
}

std::uint32_t largest_component_size(const Graph& g) {
  BfsWorkspace ws;
  return largest_component_size(g, ws);
}

std::uint32_t largest_component_size(const Graph& g, BfsWorkspace& ws) {
  const Vertex n = g.vertex_count();
  ws.visited.assign(n, 0);
  std::uint32_t best = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (ws.visited[s]) continue;
    ws.visited[s] = 1;
    ws.queue.clear();
    ws.queue.push_back(s);
    std::size_t head = 0;
    while (head < ws.queue.size()) {
      const Vertex u = ws.queue[head++];
      for (Vertex v : g.neighbors(u)) {
        if (!ws.visited[v]) {
          ws.visited[v] = 1;
          ws.queue.push_back(v);
        }
      }
    }
    best = std::max(best, static_cast<std::uint32_t>(ws.queue.size()));
  }
  return best;
}

}  // namespace critgraph
