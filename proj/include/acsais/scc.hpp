#pragma once

#include "acsais/graph.hpp"

#include <vector>

namespace acsais {

using Block = std::vector<int>;
/// Blocks are sorted internally; the block list order depends on the producer.
using Partition = std::vector<Block>;

/// Strongly connected components of the graph given by adjacency lists
/// (adj[i] = successors of i). Blocks come out in reverse topological order
/// of the condensation: no block has an edge into a block listed after it.
/// Each block is sorted ascending. Single-pass Tarjan, iterative.
Partition strongly_connected_components(const std::vector<std::vector<int>>& adj);

/// Convenience overload on the support of a weighted digraph.
Partition strongly_connected_components(const WeightedDigraph& g);

bool is_strongly_connected(const std::vector<std::vector<int>>& adj);
bool is_strongly_connected(const WeightedDigraph& g);

}  // namespace acsais
