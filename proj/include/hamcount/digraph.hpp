#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hamcount/log_matrix.hpp"

namespace hamcount {

using Vertex = int;  // 1-based in every public interface

struct Edge {
  Vertex tail;
  Vertex head;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

// Simple digraph on vertices 1..n with positive edge weights. Validated on
// construction: no self-loops, no duplicate arcs, weights > 0 and finite.
class WeightedDigraph {
 public:
  WeightedDigraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_edge(Vertex tail, Vertex head) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<char> present_;  // n*n, 0-based
};

// Simple undirected graph; each edge is an unordered pair stored with first < second.
class UndirectedGraph {
 public:
  UndirectedGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  bool adjacent(Vertex u, Vertex v) const { return adj_[index(u, v)] != 0; }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v - 1);
  }

  int n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<char> adj_;
};

struct DensityProfile {
  std::vector<int> indegree;   // by vertex, 0-based position
  std::vector<int> outdegree;
  std::vector<int> degree;     // min(in, out)
  int min_degree = 0;          // Delta
  double alpha = 0.0;          // Delta / n
};

LogMatrix adjacency_matrix(const WeightedDigraph& g);

DensityProfile density(const WeightedDigraph& g);

// Degree floor used by the generator: ceil(alpha * n), robust to round-off in alpha * n.
int degree_floor(int n, double alpha);

// Unweighted digraph with min(indegree, outdegree) >= ceil(alpha * n) at every vertex.
// Starts from the complete digraph and drops arcs in random order whenever both
// endpoints stay above the floor. Deterministic in seed.
WeightedDigraph gen_dense_digraph(int n, double alpha, std::uint64_t seed);

// Replaces every undirected edge with both orientations. Requires n >= 3.
WeightedDigraph symmetric_lift(const UndirectedGraph& g);

// Uniform random simple undirected graph G(n, p). Test and experiment helper.
UndirectedGraph gen_undirected(int n, double edge_probability, std::uint64_t seed);

}  // namespace hamcount
