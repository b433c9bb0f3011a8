#pragma once

#include <iosfwd>
#include <string>

#include "hamcount/digraph.hpp"
#include "hamcount/log_matrix.hpp"

namespace hamcount {

// Graph file: first data line `n m`, then m lines `tail head [weight]` (weight
// defaults to 1). Lines starting with '#' and blank lines are ignored. Vertices are
// 1-based. Errors are ParseError carrying the offending line number.
WeightedDigraph read_digraph(std::istream& in);

// Same layout; each edge line `u v` is an unordered pair.
UndirectedGraph read_undirected(std::istream& in);

// Matrix file: first data line `n`, then n rows of n decimal entries, 0 = no edge.
LogMatrix read_matrix(std::istream& in);

// Interprets a matrix as a digraph adjacency matrix; a nonzero diagonal is rejected.
WeightedDigraph digraph_from_matrix(const LogMatrix& a);

void write_digraph(std::ostream& out, const WeightedDigraph& g);
void write_undirected(std::ostream& out, const UndirectedGraph& g);

}  // namespace hamcount
