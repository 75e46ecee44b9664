#include "acsais/graph.hpp"

#include "acsais/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace acsais {

namespace {

void build_csr(int n, const std::vector<Edge>& edges, bool by_source,
               std::vector<int>& offsets, std::vector<int>& items) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges) ++offsets[(by_source ? e.source : e.target) + 1];
  for (int i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  items.resize(edges.size());
  std::vector<int> fill(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    const int key = by_source ? e.source : e.target;
    items[fill[key]++] = by_source ? e.target : e.source;
  }
}

}  // namespace

WeightedDigraph::WeightedDigraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InputError("node count must be nonnegative, got " + std::to_string(n));
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    const std::string where = "edge #" + std::to_string(k) + " (" + std::to_string(e.source) +
                              " -> " + std::to_string(e.target) + ")";
    if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
      throw InputError(where + ": node index outside [0, " + std::to_string(n) + ")");
    if (e.source == e.target) throw InputError(where + ": self-loops are not allowed");
    if (!std::isfinite(e.weight) || e.weight <= 0.0)
      throw InputError(where + ": weight must be a finite positive number");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].source == edges_[k - 1].source && edges_[k].target == edges_[k - 1].target)
      throw InputError("duplicate edge (" + std::to_string(edges_[k].source) + " -> " +
                       std::to_string(edges_[k].target) + ")");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges_.size());
  for (const Edge& e : edges_) triplets.emplace_back(e.source, e.target, e.weight);
  matrix_.resize(n, n);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();

  build_csr(n, edges_, true, out_offsets_, out_targets_);
  build_csr(n, edges_, false, in_offsets_, in_sources_);
}

WeightedDigraph WeightedDigraph::from_matrix(const Matrix& weights) {
  if (weights.rows() != weights.cols()) throw InputError("weight matrix must be square");
  std::vector<Edge> edges;
  for (Index i = 0; i < weights.rows(); ++i)
    for (Index j = 0; j < weights.cols(); ++j)
      if (i != j && weights(i, j) != 0.0)
        edges.push_back({static_cast<int>(i), static_cast<int>(j), weights(i, j)});
  return WeightedDigraph(static_cast<int>(weights.rows()), std::move(edges));
}

std::span<const int> WeightedDigraph::neighbors(int i) const {
  return {out_targets_.data() + out_offsets_[i],
          static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i])};
}

std::span<const int> WeightedDigraph::reverse_neighbors(int j) const {
  return {in_sources_.data() + in_offsets_[j],
          static_cast<std::size_t>(in_offsets_[j + 1] - in_offsets_[j])};
}

WeightedDigraph WeightedDigraph::scaled(double factor) const {
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.weight *= factor;
  return WeightedDigraph(n_, std::move(edges));
}

bool WeightedDigraph::is_symmetric() const {
  for (const Edge& e : edges_)
    if (weight(e.target, e.source) != e.weight) return false;
  return true;
}

MultilayerNetwork::MultilayerNetwork(WeightedDigraph layer_s, WeightedDigraph layer_a)
    : layer_s_(std::move(layer_s)), layer_a_(std::move(layer_a)) {
  if (layer_s_.size() != layer_a_.size())
    throw InputError("layer node counts differ: S has " + std::to_string(layer_s_.size()) +
                     ", A has " + std::to_string(layer_a_.size()));
}

std::vector<std::vector<int>> support_lists(const SparseMatrix& m) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(m, i); it; ++it)
      if (it.value() != 0.0 && it.col() != i) adj[i].push_back(static_cast<int>(it.col()));
  return adj;
}

std::vector<std::vector<int>> support_lists(const Matrix& m) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0.0) adj[i].push_back(static_cast<int>(j));
  return adj;
}

}  // namespace acsais
