#pragma once

// Shared test networks and maps.

#include "acsais/graph.hpp"
#include "acsais/npf.hpp"
#include "acsais/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace acsais::testing {

inline WeightedDigraph digraph(int n, std::vector<std::pair<int, int>> arcs, double w = 1.0) {
  std::vector<Edge> edges;
  for (auto [i, j] : arcs) edges.push_back({i, j, w});
  return WeightedDigraph(n, std::move(edges));
}

inline WeightedDigraph cycle(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i) arcs.emplace_back(i, (i + 1) % n);
  return digraph(n, arcs);
}

inline WeightedDigraph reverse_cycle(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i) arcs.emplace_back((i + 1) % n, i);
  return digraph(n, arcs);
}

inline WeightedDigraph complete(int n, double w = 1.0) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) arcs.emplace_back(i, j);
  return digraph(n, arcs, w);
}

/// Twelve nodes, 0-indexed,
/// whose aggregation visits P2 = {0,1,2},{3,4,5},{6,7,8},{9,10,11},
/// P3 = {0..5},{6,7,8},{9,10,11}, and G^3 strongly connected.
///
/// Both layers carry the four 3-cycles. The extra arcs create one
/// both-layer link per step: node 0 reaches {3,4,5} through S and A,
/// node 3 reaches {0,1,2}, node 5 reaches {6,7,8}, node 6 reaches
/// {9,10,11}, and node 9 reaches {0..5} only once triples 1 and 2 merge.
inline MultilayerNetwork twelve_node_network() {
  std::vector<std::pair<int, int>> common;
  for (int base : {0, 3, 6, 9})
    for (int k = 0; k < 3; ++k) common.emplace_back(base + k, base + (k + 1) % 3);
  auto s = common, a = common;
  for (auto arc : {std::pair{0, 3}, {3, 0}, {5, 6}, {6, 9}, {9, 0}}) s.push_back(arc);
  for (auto arc : {std::pair{0, 4}, {3, 1}, {5, 7}, {6, 10}, {9, 3}}) a.push_back(arc);
  return MultilayerNetwork(digraph(12, s), digraph(12, a));
}

/// Erdos-Renyi digraph with arc probability p and weights in [0.5, 1.5].
inline WeightedDigraph erdos_renyi(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution arc(p);
  std::uniform_real_distribution<double> w(0.5, 1.5);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && arc(rng)) edges.push_back({i, j, w(rng)});
  return WeightedDigraph(n, std::move(edges));
}

/// Random pair for equivalence tests. Mixes independent sparse layers (often
/// disconnected), correlated layers (A shares part of S's support) and dense
/// layers, so both verdicts occur often.
inline MultilayerNetwork random_pair(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mode(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int m = mode(rng);
  if (m == 0) {
    const double p = 0.1 + 0.5 * unit(rng);
    return MultilayerNetwork(erdos_renyi(n, p, rng), erdos_renyi(n, p, rng));
  }
  if (m == 1) {
    // S strongly connected; A keeps a random share of S plus random arcs.
    WeightedDigraph s = random_strongly_connected(n, 1.0 + 2.0 * unit(rng), rng);
    const double keep = unit(rng);
    std::bernoulli_distribution kept(keep), extra(0.1);
    std::vector<Edge> a;
    for (const Edge& e : s.edges())
      if (kept(rng)) a.push_back(e);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !s.has_edge(i, j) && extra(rng)) a.push_back({i, j, 1.0});
    return MultilayerNetwork(std::move(s), WeightedDigraph(n, std::move(a)));
  }
  return MultilayerNetwork(random_strongly_connected(n, 1.5 + 2 * unit(rng), rng),
                           random_strongly_connected(n, 1.5 + 2 * unit(rng), rng));
}

/// Random M-connected pair with strongly connected layers: A keeps S's
/// support, reweighted, plus extra random arcs.
inline MultilayerNetwork random_m_connected(int n, double degree, std::mt19937_64& rng) {
  WeightedDigraph s = random_strongly_connected(n, degree, rng);
  std::uniform_real_distribution<double> w(0.5, 1.5);
  std::bernoulli_distribution extra(degree / (2.0 * n));
  std::vector<Edge> a;
  for (const Edge& e : s.edges()) a.push_back({e.source, e.target, w(rng)});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !s.has_edge(i, j) && extra(rng)) a.push_back({i, j, w(rng)});
  return MultilayerNetwork(std::move(s), WeightedDigraph(n, std::move(a)));
}

/// F(x) = [min(x2, x3), x1 + x3, x1 + x2]: satisfies C2 but not C1.
inline FunctionMap min_map() {
  return FunctionMap(3, [](const Vector& x) {
    Vector y(3);
    y << std::min(x(1), x(2)), x(0) + x(2), x(0) + x(1);
    return y;
  });
}

/// F(x) = [x2 x3 / (x2 + x3), x1 + x3, x1 + x2] with 0 for a 0/0 entry.
inline FunctionMap harmonic_map() {
  return FunctionMap(3, [](const Vector& x) {
    Vector y(3);
    const double d = x(1) + x(2);
    y << (d > 0 ? x(1) * x(2) / d : 0.0), x(0) + x(2), x(0) + x(1);
    return y;
  });
}

/// F(x) = [4 x1^(1/2) x2^(3/2) / (x1 + x2), x1 + x2]: fails C2 at J = {1}.
inline FunctionMap power_mean_map() {
  return FunctionMap(2, [](const Vector& x) {
    Vector y(2);
    const double d = x(0) + x(1);
    y << (d > 0 ? 4 * std::sqrt(x(0)) * std::pow(x(1), 1.5) / d : 0.0), x(0) + x(1);
    return y;
  });
}

}  // namespace acsais::testing
