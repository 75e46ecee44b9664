#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <span>
#include <vector>

namespace acsais {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// Row i holds the contacts of node i: entry (i, j) is w_ij, the intensity
/// with which an infected j reaches i.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Edge {
  int source;
  int target;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed graph with strictly positive weights and no self-loops.
///
/// An edge (i, j, w) means node j is a contact of node i with weight w, so
/// the associated matrix has W(i, j) = w. Immutable after construction.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  /// Validates and stores the edges. Throws InputError on out-of-range
  /// indices, self-loops, non-positive or non-finite weights and duplicates.
  WeightedDigraph(int n, std::vector<Edge> edges);

  /// Builds the graph from the nonzero pattern of a nonnegative matrix.
  static WeightedDigraph from_matrix(const Matrix& weights);

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  Matrix dense() const { return Matrix(matrix_); }

  /// Contacts of node i (column indices of row i).
  std::span<const int> neighbors(int i) const;
  /// Nodes that list j as a contact.
  std::span<const int> reverse_neighbors(int j) const;

  double weight(int i, int j) const { return matrix_.coeff(i, j); }
  bool has_edge(int i, int j) const { return weight(i, j) > 0.0; }

  WeightedDigraph scaled(double factor) const;
  bool is_symmetric() const;

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;  // sorted by (source, target)
  SparseMatrix matrix_;
  std::vector<int> out_offsets_, out_targets_;
  std::vector<int> in_offsets_, in_sources_;
};

/// Two contact layers over one node set: S is used by susceptible nodes,
/// A by alert nodes.
class MultilayerNetwork {
 public:
  MultilayerNetwork() = default;
  /// Throws InputError when the layers disagree on the node count.
  MultilayerNetwork(WeightedDigraph layer_s, WeightedDigraph layer_a);

  int size() const noexcept { return layer_s_.size(); }
  const WeightedDigraph& layer_s() const noexcept { return layer_s_; }
  const WeightedDigraph& layer_a() const noexcept { return layer_a_; }

  friend bool operator==(const MultilayerNetwork&, const MultilayerNetwork&) = default;

 private:
  WeightedDigraph layer_s_;
  WeightedDigraph layer_a_;
};

/// Adjacency lists of the support pattern of a matrix, row-wise.
std::vector<std::vector<int>> support_lists(const SparseMatrix& m);
std::vector<std::vector<int>> support_lists(const Matrix& m);

}  // namespace acsais
