// SPDX-License-Identifier: Apache-2.0
//
// Reserve price instances built from densest k-subgraph instances.

#ifndef RPO_HARDNESS_H_
#define RPO_HARDNESS_H_

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rpo/core.h"

namespace rpo {

// Simple undirected graph.
struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

// Throws std::invalid_argument on out-of-range endpoints, self-loops or
// duplicate edges (in either orientation).
void ValidateGraph(const Graph& graph);

// |V|^2 copies of (all ones, b1 = k, b2 = 0), stored as one row with that
// multiplicity, followed by one (indicator of {u, v}, b1 = 2, b2 = 1.5) row
// per edge. The box is [0, 1]^|V| without offset.
// Throws std::invalid_argument unless 1 <= k <= |V|.
Instance ReduceDensestSubgraph(const Graph& graph, int k);

// beta_v = 1 on the set, 0 elsewhere.
// Throws std::out_of_range for vertices outside [0, dimension).
LinearModel SubgraphIndicator(const std::set<int>& vertices, int dimension);

// (k |V|^2 + 1.5 |E| + 0.5 |E_H|) / (|V|^2 + |E|), E_H the induced edges.
// Throws std::invalid_argument unless the set has exactly k vertices.
double ReductionRewardFormula(const Graph& graph, const std::set<int>& vertices,
                              int k);

// Number of edges with both endpoints in the set.
int InducedEdges(const Graph& graph, const std::set<int>& vertices);

// {v : beta_v >= threshold}.
std::set<int> RecoverSubgraph(const LinearModel& model, double threshold = 0.5);

// Edge list: one "u v" pair per line, 0-indexed. Blank lines and text after
// '#' are ignored. The vertex count is one more than the largest endpoint
// unless given.
// Throws std::invalid_argument with the line number on malformed input.
Graph ParseEdgeList(std::istream& in, std::optional<int> num_vertices = {});
Graph ReadEdgeList(const std::string& path, std::optional<int> num_vertices = {});

}  // namespace rpo

#endif  // RPO_HARDNESS_H_
