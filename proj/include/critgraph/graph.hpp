#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "critgraph/common.hpp"

namespace critgraph {

struct Edge {
  Vertex u;
  Vertex v;
};

// Simple undirected graph on [0, n) in CSR form: per-vertex neighbor
// lists are sorted, loop-free and duplicate-free. Immutable once built
// (assign() replaces the whole graph); safe to share read-only across
// threads.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(Vertex n, std::span<const Edge> edges);

  // Rebuilds the graph in place, reusing internal buffers. `edges` is
  // used as scratch (normalized, sorted, deduplicated). Throws on
  // self-loops or out-of-range endpoints.
  void assign(Vertex n, std::vector<Edge>& edges);

  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v],
            neighbors_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const {
    return offsets_[v + 1] - offsets_[v];
  }

  bool has_edge(Vertex u, Vertex v) const;

  // Full invariant audit (symmetry, sortedness, no loops/duplicates).
  // Linear scan; meant for tests and file import.
  bool is_valid() const;

 private:
  Vertex n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
};

// Edge-list text format: optional "# n <count>" header, then one "u v"
// pair per line, 1-based. Without the header, n is the largest label
// seen. Duplicate lines are coalesced; self-loops are rejected.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace critgraph
