#include "acsais/mconnect.hpp"

#include "acsais/errors.hpp"

#include <algorithm>
#include <string>

namespace acsais {

namespace {

std::vector<int> block_labels(int n, const Partition& partition) {
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b].empty()) throw InputError("partition contains an empty block");
    for (int v : partition[b]) {
      if (v < 0 || v >= n)
        throw InputError("partition block holds node " + std::to_string(v) +
                         " outside [0, " + std::to_string(n) + ")");
      if (label[v] != -1)
        throw InputError("partition blocks overlap at node " + std::to_string(v));
      label[v] = static_cast<int>(b);
    }
  }
  for (int v = 0; v < n; ++v)
    if (label[v] == -1)
      throw InputError("partition does not cover node " + std::to_string(v));
  return label;
}

std::vector<std::vector<int>> link_lists(const AggregateGraph& g) {
  std::vector<std::vector<int>> adj(g.partition.size());
  for (const auto& [from, to] : g.links) {
    if (from < 0 || to < 0 || from >= static_cast<int>(adj.size()) ||
        to >= static_cast<int>(adj.size()))
      throw InputError("hyperlink refers to a block that does not exist");
    adj[from].push_back(to);
  }
  return adj;
}

}  // namespace

Partition canonical_partition(Partition p) {
  for (Block& b : p) std::sort(b.begin(), b.end());
  std::sort(p.begin(), p.end(), [](const Block& a, const Block& b) {
    if (a.empty() || b.empty()) return a.size() < b.size();
    return a.front() < b.front();
  });
  return p;
}

Partition singleton_partition(int n) {
  Partition p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = {i};
  return p;
}

std::vector<Hyperlink> hyperlinks(const MultilayerNetwork& net, const Partition& partition) {
  const int n = net.size();
  const std::vector<int> label = block_labels(n, partition);
  std::vector<Hyperlink> links;
  // Blocks reached from node i through each layer; a link needs both.
  std::vector<int> seen_s(partition.size(), -1);
  for (int i = 0; i < n; ++i) {
    for (int j : net.layer_s().neighbors(i)) seen_s[label[j]] = i;
    for (int j : net.layer_a().neighbors(i)) {
      const int target = label[j];
      if (target != label[i] && seen_s[target] == i) links.emplace_back(label[i], target);
    }
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  return links;
}

AggregateGraph aggregate_step(const MultilayerNetwork& net, const AggregateGraph& prev) {
  block_labels(net.size(), prev.partition);
  const Partition components = strongly_connected_components(link_lists(prev));
  Partition merged;
  merged.reserve(components.size());
  for (const Block& comp : components) {
    Block block;
    for (int b : comp) block.insert(block.end(), prev.partition[b].begin(), prev.partition[b].end());
    merged.push_back(std::move(block));
  }
  AggregateGraph next;
  next.partition = canonical_partition(std::move(merged));
  next.links = hyperlinks(net, next.partition);
  return next;
}

AggregationTrace m_connectivity_trace(const MultilayerNetwork& net) {
  const int n = net.size();
  if (n < 1) throw PreconditionError("M-connectivity needs at least one node");
  AggregationTrace trace;
  trace.graphs.push_back({singleton_partition(n), {}});
  if (n == 1) {
    trace.converged = trace.m_connected = true;
    trace.k_star = 0;
    return trace;
  }
  // G^1 shares the singleton partition of G^0 (no links to merge), so the
  // first step only adds links. From then on every step either strictly
  // coarsens the partition or hits a fixed point, hence at most n steps.
  for (int k = 1;; ++k) {
    AggregateGraph next = aggregate_step(net, trace.graphs.back());
    const bool unchanged = k > 1 && next.partition == trace.graphs.back().partition;
    if (unchanged) {
      trace.converged = true;
      trace.m_connected = false;
      return trace;
    }
    trace.graphs.push_back(std::move(next));
    const AggregateGraph& g = trace.graphs.back();
    if (g.partition.size() == 1 || is_strongly_connected(link_lists(g))) {
      trace.converged = trace.m_connected = true;
      trace.k_star = k;
      return trace;
    }
  }
}

}  // namespace acsais
