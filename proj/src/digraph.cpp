#include "hamcount/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hamcount/errors.hpp"

namespace hamcount {

namespace {

std::string arc_name(Vertex t, Vertex h) {
  return "(" + std::to_string(t) + "," + std::to_string(h) + ")";
}

}  // namespace

WeightedDigraph::WeightedDigraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw DomainError("digraph: vertex count must be >= 1");
  present_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges_) {
    if (e.tail < 1 || e.tail > n || e.head < 1 || e.head > n) {
      throw DomainError("digraph: arc " + arc_name(e.tail, e.head) + " has an endpoint outside 1.." +
                        std::to_string(n));
    }
    if (e.tail == e.head) throw DomainError("digraph: self-loop at vertex " + std::to_string(e.tail));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw DomainError("digraph: arc " + arc_name(e.tail, e.head) + " needs a finite positive weight");
    }
    char& slot = present_[static_cast<std::size_t>(e.tail - 1) * n + (e.head - 1)];
    if (slot) throw DomainError("digraph: duplicate arc " + arc_name(e.tail, e.head));
    slot = 1;
  }
}

bool WeightedDigraph::has_edge(Vertex tail, Vertex head) const {
  if (tail < 1 || tail > n_ || head < 1 || head > n_) return false;
  return present_[static_cast<std::size_t>(tail - 1) * n_ + (head - 1)] != 0;
}

UndirectedGraph::UndirectedGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges) : n_(n) {
  if (n < 1) throw DomainError("graph: vertex count must be >= 1");
  adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n) throw DomainError("graph: edge endpoint outside 1.." + std::to_string(n));
    if (u == v) throw DomainError("graph: self-loop at vertex " + std::to_string(u));
    if (adj_[index(u, v)]) throw DomainError("graph: duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    adj_[index(u, v)] = adj_[index(v, u)] = 1;
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
}

LogMatrix adjacency_matrix(const WeightedDigraph& g) {
  LogMatrix a(static_cast<std::size_t>(g.n()));
  for (const Edge& e : g.edges()) a.set_value(e.tail - 1, e.head - 1, e.weight);
  return a;
}

DensityProfile density(const WeightedDigraph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  DensityProfile p;
  p.indegree.assign(n, 0);
  p.outdegree.assign(n, 0);
  for (const Edge& e : g.edges()) {
    ++p.outdegree[e.tail - 1];
    ++p.indegree[e.head - 1];
  }
  p.degree.resize(n);
  p.min_degree = g.n();
  for (std::size_t i = 0; i < n; ++i) {
    p.degree[i] = std::min(p.indegree[i], p.outdegree[i]);
    p.min_degree = std::min(p.min_degree, p.degree[i]);
  }
  p.alpha = static_cast<double>(p.min_degree) / static_cast<double>(g.n());
  return p;
}

int degree_floor(int n, double alpha) {
  return static_cast<int>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
}

WeightedDigraph gen_dense_digraph(int n, double alpha, std::uint64_t seed) {
  if (n < 2) throw DomainError("gen_dense_digraph: need n >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("gen_dense_digraph: alpha must lie in (0, 1]");
  const int floor_deg = degree_floor(n, alpha);
  if (floor_deg > n - 1) {
    throw DomainError("gen_dense_digraph: degree floor " + std::to_string(floor_deg) +
                      " exceeds n-1 = " + std::to_string(n - 1));
  }

  std::vector<Edge> arcs;
  arcs.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (Vertex t = 1; t <= n; ++t)
    for (Vertex h = 1; h <= n; ++h)
      if (t != h) arcs.push_back({t, h, 1.0});

  std::mt19937_64 rng(seed);
  std::shuffle(arcs.begin(), arcs.end(), rng);

  std::vector<int> out(n, n - 1), in(n, n - 1);
  std::vector<char> keep(arcs.size(), 1);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Edge& e = arcs[k];
    if (out[e.tail - 1] > floor_deg && in[e.head - 1] > floor_deg) {
      keep[k] = 0;
      --out[e.tail - 1];
      --in[e.head - 1];
    }
  }

  std::vector<Edge> kept;
  for (std::size_t k = 0; k < arcs.size(); ++k)
    if (keep[k]) kept.push_back(arcs[k]);
  std::sort(kept.begin(), kept.end(), [](const Edge& a, const Edge& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  return WeightedDigraph(n, std::move(kept));
}

WeightedDigraph symmetric_lift(const UndirectedGraph& g) {
  if (g.n() < 3) throw DomainError("symmetric_lift: need n >= 3");
  std::vector<Edge> arcs;
  arcs.reserve(2 * g.edges().size());
  for (auto [u, v] : g.edges()) {
    arcs.push_back({u, v, 1.0});
    arcs.push_back({v, u, 1.0});
  }
  return WeightedDigraph(g.n(), std::move(arcs));
}

UndirectedGraph gen_undirected(int n, double edge_probability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_probability);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return UndirectedGraph(n, std::move(edges));
}

}  // namespace hamcount
