#include "critgraph/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace critgraph {

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
  std::vector<Edge> scratch(edges.begin(), edges.end());
  Graph g;
  g.assign(n, scratch);
  return g;
}

void Graph::assign(Vertex n, std::vector<Edge>& edges) {
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return a.u == b.u && a.v == b.v;
                          }),
              edges.end());

  n_ = n;
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 1; i <= n; ++i) offsets_[i] += offsets_[i - 1];

  neighbors_.assign(edges.size() * 2, 0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    neighbors_[cursor[e.u]++] = e.v;
    neighbors_[cursor[e.v]++] = e.u;
  }
  // Edges arrive sorted by (min,max), so the lists of the smaller
  // endpoints are already ordered; the mirrored entries are not.
  for (Vertex v = 0; v < n; ++v) {
    std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_valid() const {
  for (Vertex v = 0; v < n_; ++v) {
    const auto nb = neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= n_ || nb[i] == v) return false;
      if (i > 0 && nb[i] <= nb[i - 1]) return false;
      if (!has_edge(nb[i], v)) return false;
    }
  }
  return true;
}

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  Vertex n = 0;
  bool n_from_header = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      unsigned long long value = 0;
      if (hs >> key >> value && key == "n") {
        n = static_cast<Vertex>(value);
        n_from_header = true;
      }
      continue;
    }
    std::istringstream ls(line);
    long long u = 0, v = 0;
    if (!(ls >> u >> v))
      throw std::invalid_argument("edge list: malformed line: " + line);
    if (u < 1 || v < 1)
      throw std::invalid_argument("edge list: labels are 1-based");
    const Vertex a = static_cast<Vertex>(u - 1);
    const Vertex b = static_cast<Vertex>(v - 1);
    if (!n_from_header) n = std::max({n, a + 1, b + 1});
    edges.push_back({a, b});
  }
  return Graph::from_edges(n, edges);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# n " << g.vertex_count() << "\n";
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v > u) out << (u + 1) << " " << (v + 1) << "\n";
    }
  }
}

}  // namespace critgraph
