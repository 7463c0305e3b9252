#include "critgraph/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critgraph {

namespace {

constexpr Vertex kDenseOracleLimit = 2048;

// Appends the kept positions of a Bernoulli(p) scan over [first, count)
// as calls to `hit`, via geometric skipping.
template <typename Fn>
void skip_scan(RandomStream& rng, std::uint64_t count, double p, Fn&& hit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) hit(i);
    return;
  }
  std::uint64_t pos = 0;
  for (;;) {
    const std::uint64_t s = rng.geometric_skip(p);
    if (s >= count - pos) return;
    pos += s;
    hit(pos);
    ++pos;
    if (pos >= count) return;
  }
}

void percolate_edges(std::span<const Edge> base, double p, RandomStream& rng,
                     std::vector<Edge>& kept) {
  kept.clear();
  skip_scan(rng, base.size(), p,
            [&](std::uint64_t idx) { kept.push_back(base[idx]); });
}

}  // namespace

// ---------------------------------------------------------------------------
// Erdos-Renyi

ErConfig ErConfig::with_p(Vertex n, double p) {
  if (n == 0) throw std::invalid_argument("er: n must be positive");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("er: p must lie in [0,1]");
  return ErConfig{n, p, std::nullopt};
}

ErConfig ErConfig::critical_window(Vertex n, double lambda) {
  if (n == 0) throw std::invalid_argument("er: n must be positive");
  const double nn = static_cast<double>(n);
  double p = 1.0 / nn + lambda * std::pow(nn, -4.0 / 3.0);
  p = std::clamp(p, 0.0, 1.0);
  ErConfig cfg{n, p, lambda};
  return cfg;
}

void gen_er(const ErConfig& config, RandomStream& rng,
            std::vector<Edge>& scratch, Graph& out) {
  const Vertex n = config.n;
  const double p = config.p;
  scratch.clear();
  if (n >= 2 && p > 0.0) {
    if (p >= 1.0) {
      for (Vertex i = 0; i + 1 < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) scratch.push_back({i, j});
    } else {
      // Walk the lexicographic pair sequence (0,1),(0,2),...,(n-2,n-1)
      // jumping over skipped pairs.
      std::uint64_t i = 0;
      std::uint64_t j = 1;
      std::uint64_t skip = rng.geometric_skip(p);
      while (i + 1 < n) {
        const std::uint64_t row_left = n - j;
        if (skip >= row_left) {
          skip -= row_left;
          ++i;
          j = i + 1;
          continue;
        }
        j += skip;
        scratch.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
        skip = rng.geometric_skip(p);
        ++j;
        if (j >= n) {
          ++i;
          j = i + 1;
        }
      }
    }
  }
  out.assign(n, scratch);
}

Graph gen_er(const ErConfig& config, RandomStream& rng) {
  Graph g;
  std::vector<Edge> scratch;
  gen_er(config, rng, scratch, g);
  return g;
}

Graph gen_er_dense(const ErConfig& config, RandomStream& rng) {
  if (config.n > kDenseOracleLimit)
    throw std::invalid_argument("gen_er_dense: n too large for the oracle");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < config.n; ++i)
    for (Vertex j = i + 1; j < config.n; ++j)
      if (rng.bernoulli(config.p)) edges.push_back({i, j});
  return Graph::from_edges(config.n, edges);
}

// ---------------------------------------------------------------------------
// Random intersection graph

std::uint64_t IntersectionConfig::m() const {
  return static_cast<std::uint64_t>(beta * static_cast<double>(n));
}

void gen_intersection(const IntersectionConfig& config, RandomStream& rng,
                      std::vector<Edge>& scratch, Graph& out) {
  if (config.n == 0)
    throw std::invalid_argument("intersection: n must be positive");
  if (config.beta <= 0.0 || config.gamma < 0.0)
    throw std::invalid_argument("intersection: beta > 0, gamma >= 0 required");
  const double p = config.p();
  if (p > 1.0)
    throw std::invalid_argument("intersection: gamma/n exceeds 1");

  scratch.clear();
  const std::uint64_t m = config.m();
  std::vector<Vertex> hits;
  hits.reserve(16);
  for (std::uint64_t aux = 0; aux < m; ++aux) {
    hits.clear();
    skip_scan(rng, config.n, p, [&](std::uint64_t v) {
      hits.push_back(static_cast<Vertex>(v));
    });
    for (std::size_t a = 0; a + 1 < hits.size(); ++a)
      for (std::size_t b = a + 1; b < hits.size(); ++b)
        scratch.push_back({hits[a], hits[b]});
  }
  out.assign(config.n, scratch);  // coalesces multi-edges
}

Graph gen_intersection(const IntersectionConfig& config, RandomStream& rng) {
  Graph g;
  std::vector<Edge> scratch;
  gen_intersection(config, rng, scratch, g);
  return g;
}

// ---------------------------------------------------------------------------
// d-regular base graphs and percolation

namespace {

std::vector<Edge> circulant_edges(Vertex n, std::uint32_t d) {
  if (d % 2 == 1 && n % 2 == 1)
    throw std::invalid_argument("circulant: odd d requires even n");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * d / 2);
  const std::uint32_t half = d / 2;
  for (std::uint32_t s = 1; s <= half; ++s)
    for (Vertex i = 0; i < n; ++i)
      edges.push_back({i, static_cast<Vertex>((i + s) % n)});
  if (d % 2 == 1) {
    const Vertex opposite = n / 2;
    for (Vertex i = 0; i < opposite; ++i)
      edges.push_back({i, static_cast<Vertex>(i + opposite)});
  }
  return edges;
}

std::vector<Edge> random_regular_edges(Vertex n, std::uint32_t d,
                                       RandomStream& rng) {
  if (static_cast<std::uint64_t>(n) * d % 2 != 0)
    throw std::invalid_argument("random regular: n*d must be even");
  const std::size_t half_edges = static_cast<std::size_t>(n) * d;
  std::vector<Vertex> stubs(half_edges);
  std::vector<Edge> edges;
  edges.reserve(half_edges / 2);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::size_t idx = 0;
    for (Vertex v = 0; v < n; ++v)
      for (std::uint32_t r = 0; r < d; ++r) stubs[idx++] = v;
    for (std::size_t i = half_edges - 1; i > 0; --i) {
      const std::size_t j = rng.uniform_below(i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    edges.clear();
    bool simple = true;
    for (std::size_t t = 0; t < half_edges; t += 2) {
      Vertex a = stubs[t], b = stubs[t + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      edges.push_back({a, b});
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
      return x.u < y.u || (x.u == y.u && x.v < y.v);
    });
    for (std::size_t t = 1; t < edges.size(); ++t) {
      if (edges[t].u == edges[t - 1].u && edges[t].v == edges[t - 1].v) {
        simple = false;
        break;
      }
    }
    if (simple) return edges;
  }
  throw std::runtime_error("random regular: rejection sampling gave up");
}

void validate_regular(const RegularPercolationConfig& config) {
  if (config.n == 0)
    throw std::invalid_argument("regular: n must be positive");
  if (config.d < 1 || config.d >= config.n)
    throw std::invalid_argument("regular: need 1 <= d <= n-1");
  if (!(config.p >= 0.0 && config.p <= 1.0))
    throw std::invalid_argument("regular: p must lie in [0,1]");
  if (config.base == RegularBase::Complete && config.d != config.n - 1)
    throw std::invalid_argument("regular: complete base needs d = n-1");
}

}  // namespace

Graph regular_base_graph(const RegularPercolationConfig& config,
                         RandomStream& rng) {
  validate_regular(config);
  std::vector<Edge> edges;
  switch (config.base) {
    case RegularBase::Circulant:
      edges = circulant_edges(config.n, config.d);
      break;
    case RegularBase::RandomRegular:
      edges = random_regular_edges(config.n, config.d, rng);
      break;
    case RegularBase::Complete:
      for (Vertex i = 0; i + 1 < config.n; ++i)
        for (Vertex j = i + 1; j < config.n; ++j) edges.push_back({i, j});
      break;
  }
  return Graph::from_edges(config.n, edges);
}

PercolationSampler::PercolationSampler(const RegularPercolationConfig& config)
    : config_(config) {
  validate_regular(config);
  if (config.base == RegularBase::Circulant) {
    base_edges_ = circulant_edges(config.n, config.d);
  } else if (config.base == RegularBase::Complete) {
    for (Vertex i = 0; i + 1 < config.n; ++i)
      for (Vertex j = i + 1; j < config.n; ++j) base_edges_.push_back({i, j});
  }
}

void PercolationSampler::sample(RandomStream& rng, std::vector<Edge>& scratch,
                                Graph& out) const {
  if (config_.base == RegularBase::RandomRegular) {
    const std::vector<Edge> base =
        random_regular_edges(config_.n, config_.d, rng);
    percolate_edges(base, config_.p, rng, scratch);
  } else {
    percolate_edges(base_edges_, config_.p, rng, scratch);
  }
  out.assign(config_.n, scratch);
}

Graph PercolationSampler::sample(RandomStream& rng) const {
  Graph g;
  std::vector<Edge> scratch;
  sample(rng, scratch, g);
  return g;
}

Graph gen_regular_percolation(const RegularPercolationConfig& config,
                              RandomStream& rng) {
  return PercolationSampler(config).sample(rng);
}

// ---------------------------------------------------------------------------
// Norros-Reittu

NrConfig NrConfig::custom(std::vector<double> weights, double tau,
                          double c_f) {
  if (weights.empty())
    throw std::invalid_argument("nr: weight vector must be non-empty");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("nr: weights must be >= 0");
  NrConfig cfg;
  cfg.n = static_cast<Vertex>(weights.size());
  cfg.tau = tau;
  cfg.c_f = c_f;
  cfg.scale = 0.0;
  cfg.pareto_family = false;
  cfg.total_weight = 0.0;
  for (double w : weights) cfg.total_weight += w;
  cfg.weights = std::move(weights);
  return cfg;
}

NrConfig nr_weights(Vertex n, double tau, std::optional<double> scale) {
  if (n == 0) throw std::invalid_argument("nr: n must be positive");
  if (!(tau > 4.0))
    throw std::invalid_argument("nr: tau must exceed 4");
  const double a = scale.value_or((tau - 3.0) / (tau - 2.0));
  if (!(a > 0.0)) throw std::invalid_argument("nr: scale must be positive");

  NrConfig cfg;
  cfg.n = n;
  cfg.tau = tau;
  cfg.scale = a;
  cfg.c_f = std::pow(a, tau - 1.0);
  cfg.pareto_family = true;
  cfg.weights.resize(n);
  const double inv_exp = 1.0 / (tau - 1.0);
  for (Vertex j = 1; j < n; ++j) {
    cfg.weights[j - 1] =
        a * std::pow(static_cast<double>(n) / static_cast<double>(j), inv_exp);
  }
  cfg.weights[n - 1] = 0.0;  // [1-F]^{-1}(1) = 0 by convention
  cfg.total_weight = 0.0;
  for (double w : cfg.weights) cfg.total_weight += w;
  return cfg;
}

NuReport nr_nu(const NrConfig& config) {
  if (config.total_weight <= 0.0)
    throw std::invalid_argument("nr_nu: total weight must be positive");
  double sum_w = 0.0, sum_w2 = 0.0;
  for (double w : config.weights) {
    sum_w += w;
    sum_w2 += w * w;
  }
  NuReport report;
  report.empirical = sum_w2 / sum_w;
  if (config.pareto_family)
    report.analytic = config.scale * (config.tau - 2.0) / (config.tau - 3.0);
  return report;
}

NrSampler::NrSampler(const NrConfig& config) : config_(config) {
  const std::size_t n = config_.weights.size();
  exp_neg_w_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    exp_neg_w_[i] = std::exp(-config_.weights[i]);

  // Vose alias table over w_i / l_n.
  alias_.assign(n, AliasSlot{0.0, 0});
  if (config_.total_weight <= 0.0) return;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    scaled[i] =
        config_.weights[i] * static_cast<double>(n) / config_.total_weight;
  std::vector<Vertex> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (scaled[i] < 1.0)
      small.push_back(static_cast<Vertex>(i));
    else
      large.push_back(static_cast<Vertex>(i));
  }
  while (!small.empty() && !large.empty()) {
    const Vertex s = small.back();
    small.pop_back();
    const Vertex l = large.back();
    large.pop_back();
    alias_[s].accept = scaled[s];
    alias_[s].alias = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0)
      small.push_back(l);
    else
      large.push_back(l);
  }
  for (Vertex v : large) {
    alias_[v].accept = 1.0;
    alias_[v].alias = v;
  }
  for (Vertex v : small) {  // numerical leftovers
    alias_[v].accept = 1.0;
    alias_[v].alias = v;
  }
}

void NrSampler::sample(RandomStream& rng, std::vector<Edge>& scratch,
                       Graph& out) const {
  const Vertex n = config_.n;
  scratch.clear();
  if (config_.total_weight > 0.0) {
    for (Vertex i = 0; i < n; ++i) {
      const double w = config_.weights[i];
      if (w <= 0.0) continue;
      const std::uint64_t proposals = rng.poisson(w, exp_neg_w_[i]);
      for (std::uint64_t t = 0; t < proposals; ++t) {
        const Vertex idx =
            static_cast<Vertex>(rng.uniform_below(alias_.size()));
        const Vertex j =
            rng.uniform01() < alias_[idx].accept ? idx : alias_[idx].alias;
        if (j > i) scratch.push_back({i, j});
      }
    }
  }
  out.assign(n, scratch);  // multiplicities collapse here
}

Graph NrSampler::sample(RandomStream& rng) const {
  Graph g;
  std::vector<Edge> scratch;
  sample(rng, scratch, g);
  return g;
}

Graph gen_nr(const NrConfig& config, RandomStream& rng) {
  return NrSampler(config).sample(rng);
}

Graph gen_nr_dense(const NrConfig& config, RandomStream& rng) {
  if (config.n > kDenseOracleLimit)
    throw std::invalid_argument("gen_nr_dense: n too large for the oracle");
  std::vector<Edge> edges;
  if (config.total_weight > 0.0) {
    for (Vertex i = 0; i + 1 < config.n; ++i) {
      for (Vertex j = i + 1; j < config.n; ++j) {
        const double pij = -std::expm1(-config.weights[i] * config.weights[j] /
                                       config.total_weight);
        if (rng.bernoulli(pij)) edges.push_back({i, j});
      }
    }
  }
  return Graph::from_edges(config.n, edges);
}

}  // namespace critgraph
