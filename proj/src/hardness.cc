// SPDX-License-Identifier: Apache-2.0

#include "rpo/hardness.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rpo {

void ValidateGraph(const Graph& graph) {
  if (graph.num_vertices < 0) throw std::invalid_argument("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : graph.edges) {
    if (u < 0 || v < 0 || u >= graph.num_vertices || v >= graph.num_vertices) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ") has an endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ")");
    }
  }
}

Instance ReduceDensestSubgraph(const Graph& graph, int k) {
  ValidateGraph(graph);
  const int nv = graph.num_vertices;
  if (k < 1 || k > nv) {
    throw std::invalid_argument("k must lie in [1, " + std::to_string(nv) +
                                "], got " + std::to_string(k));
  }
  Instance out{Dataset(nv), Box::Symmetric(nv, 1.0, false)};
  std::fill(out.box.lower.begin(), out.box.lower.end(), 0.0);
  out.data.Add(AuctionSample{std::vector<double>(nv, 1.0), static_cast<double>(k), 0.0},
               static_cast<std::int64_t>(nv) * nv);
  for (auto [u, v] : graph.edges) {
    std::vector<double> w(nv, 0.0);
    w[u] = w[v] = 1.0;
    out.data.Add(AuctionSample{std::move(w), 2.0, 1.5});
  }
  return out;
}

LinearModel SubgraphIndicator(const std::set<int>& vertices, int dimension) {
  LinearModel model = LinearModel::Zero(dimension);
  for (int v : vertices) {
    if (v < 0 || v >= dimension) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    }
    model.beta[v] = 1.0;
  }
  return model;
}

int InducedEdges(const Graph& graph, const std::set<int>& vertices) {
  int count = 0;
  for (auto [u, v] : graph.edges) count += vertices.count(u) && vertices.count(v);
  return count;
}

double ReductionRewardFormula(const Graph& graph, const std::set<int>& vertices,
                              int k) {
  if (static_cast<int>(vertices.size()) != k) {
    throw std::invalid_argument("vertex set has " + std::to_string(vertices.size()) +
                                " elements, expected k = " + std::to_string(k));
  }
  const double v2 = static_cast<double>(graph.num_vertices) * graph.num_vertices;
  const double e = static_cast<double>(graph.edges.size());
  return (k * v2 + 1.5 * e + 0.5 * InducedEdges(graph, vertices)) / (v2 + e);
}

std::set<int> RecoverSubgraph(const LinearModel& model, double threshold) {
  std::set<int> out;
  for (int v = 0; v < model.dimension(); ++v) {
    if (model.beta[v] >= threshold) out.insert(v);
  }
  return out;
}

Graph ParseEdgeList(std::istream& in, std::optional<int> num_vertices) {
  Graph g;
  int max_vertex = -1;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long u, v;
    if (!(fields >> u)) {
      std::string rest;
      if (std::istringstream(line) >> rest) {
        throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                    ": expected two vertex ids");
      }
      continue;
    }
    std::string extra;
    if (!(fields >> v) || (fields >> extra) || u < 0 || v < 0 ||
        u > 1'000'000'000 || v > 1'000'000'000) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected two non-negative vertex ids");
    }
    g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_vertex = std::max<int>(max_vertex, std::max(u, v));
  }
  g.num_vertices = num_vertices.value_or(max_vertex + 1);
  ValidateGraph(g);
  return g;
}

Graph ReadEdgeList(const std::string& path, std::optional<int> num_vertices) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list " + path);
  return ParseEdgeList(in, num_vertices);
}

}  // namespace rpo
