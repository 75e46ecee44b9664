#pragma once

#include "acsais/graph.hpp"
#include "acsais/scc.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace acsais {

using Hyperlink = std::pair<int, int>;  // (from block, to block) by block position

/// One aggregated graph G^k: hypernodes are the blocks of a partition of the
/// node set, links join blocks by position in `partition`.
struct AggregateGraph {
  Partition partition;
  std::vector<Hyperlink> links;  // sorted, no self-links
};

/// The full G^0, G^1, ... sequence produced by the M-connectivity test.
struct AggregationTrace {
  std::vector<AggregateGraph> graphs;  // graphs[k] is G^k; graphs[0] is singletons, no links
  bool converged = false;              // loop reached a verdict
  bool m_connected = false;
  std::optional<int> k_star;           // first k with G^k strongly connected
};

/// Canonical form: every block sorted, blocks ordered by their minimum node.
Partition canonical_partition(Partition p);
Partition singleton_partition(int n);

/// Links between blocks of `partition`: (I, J) when a single node i in I has
/// an S-layer contact in J and an A-layer contact in J (possibly different
/// targets). Throws InputError if `partition` is not a partition of [0, n).
std::vector<Hyperlink> hyperlinks(const MultilayerNetwork& net, const Partition& partition);

/// G^{k-1} -> G^k: merge the strongly connected components of `prev` into
/// single blocks, then recompute the both-layer links on the merged blocks.
AggregateGraph aggregate_step(const MultilayerNetwork& net, const AggregateGraph& prev);

/// Runs the aggregation from singletons until some G^k is strongly connected
/// (accept) or the partition stops coarsening (reject). Edge weights play no
/// role; only the support of each layer matters.
AggregationTrace m_connectivity_trace(const MultilayerNetwork& net);

inline bool is_m_connected(const MultilayerNetwork& net) {
  return m_connectivity_trace(net).m_connected;
}

}  // namespace acsais
