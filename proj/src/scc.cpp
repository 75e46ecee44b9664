#include "acsais/scc.hpp"

#include <algorithm>

namespace acsais {

Partition strongly_connected_components(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  constexpr int kUnvisited = -1;
  std::vector<int> index(n, kUnvisited), lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  Partition blocks;
  int counter = 0;

  // Explicit call stack of (node, next successor position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        const int w = adj[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        Block block;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          block.push_back(w);
        } while (w != done);
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
      }
    }
  }
  return blocks;
}

Partition strongly_connected_components(const WeightedDigraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    const auto nb = g.neighbors(i);
    adj[i].assign(nb.begin(), nb.end());
  }
  return strongly_connected_components(adj);
}

bool is_strongly_connected(const std::vector<std::vector<int>>& adj) {
  return strongly_connected_components(adj).size() <= 1;
}

bool is_strongly_connected(const WeightedDigraph& g) {
  return strongly_connected_components(g).size() <= 1;
}

}  // namespace acsais
