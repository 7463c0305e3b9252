#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "critgraph/graph.hpp"

namespace critgraph {

// Record of one run of the component exploration process. Vertices are
// active, explored or unseen. A non-isolated start activates itself plus
// its smallest-labeled neighbor, so Y_0 = 2. Each regular step takes the
// smallest-labeled active vertex, activates its eta_t unseen neighbors
// and marks it explored: Y_t = Y_{t-1} + eta_t - 1. When the active set
// empties, a full sweep restarts from the smallest-labeled unseen vertex
// by activating it together with one unseen neighbor: Y_t = eta_t = 2.
struct ExplorationTrace {
  Vertex start = 0;
  bool halted_isolated = false;  // stopped immediately on an isolated start
  bool full_sweep = false;       // restart extension enabled (not just C(start))
  bool truncated = false;        // max_steps hit before finishing
  std::vector<std::uint32_t> eta;     // eta_1 .. eta_T
  std::vector<std::uint32_t> active;  // Y_0 .. Y_T (empty if halted at start)
  std::vector<std::uint32_t> component_sizes;  // in discovery order

  // Size of the component containing `start`, when fully discovered.
  std::optional<std::uint32_t> first_component_size() const {
    if (halted_isolated) return 1;
    if (!component_sizes.empty()) return component_sizes.front();
    return std::nullopt;
  }
};

struct ExploreOptions {
  bool full_sweep = false;
  std::optional<std::uint64_t> max_steps;
};

// Runs the exploration from `start`. Deterministic given the graph:
// all ties break toward the smallest label. Stops after the first
// component unless options.full_sweep asks for repeated restarts (then
// isolated vertices found at restarts are recorded as size-1 components
// without consuming a step).
ExplorationTrace explore(const Graph& g, Vertex start,
                         const ExploreOptions& options = {});

// True iff |C(start)| > k, i.e. the active count stays positive through
// the first k steps. Same traversal as explore(), no trace, and stops
// after at most k steps.
bool component_exceeds(const Graph& g, Vertex start, std::uint64_t k);

// Independent oracle: component sizes by plain breadth-first search, in
// order of smallest contained label. Sizes sum to n.
std::vector<std::uint32_t> component_sizes_bfs(const Graph& g);

std::uint32_t largest_component_size(const Graph& g);

// Reusable buffers for the BFS oracle on the Monte Carlo hot path.
struct BfsWorkspace {
  std::vector<std::uint8_t> visited;
  std::vector<Vertex> queue;
};

std::uint32_t largest_component_size(const Graph& g, BfsWorkspace& ws);

}  // namespace critgraph
