#pragma once

// Dominant (Perron) eigenpairs of nonnegative irreducible matrices and the
// joint descriptor Psi(A, B) that drives the first-order sensitivity of the
// epidemic threshold at the two extreme alerting regimes.
//
// The numerical routines are templates over the Eigen matrix type so they
// accept dense or sparse inputs and any floating scalar.

#include "acsais/errors.hpp"
#include "acsais/graph.hpp"
#include "acsais/scc.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

namespace acsais {

enum class Side { right, left };

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 100000;
};

template <typename Scalar>
struct Eigenpair {
  Scalar value{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // L2-normalized, entrywise positive
  int iterations = 0;
  Scalar residual{};  // ||W v - value v|| / value
};

/// Dominant eigenvalue with its right eigenvector v (L2-normalized) and left
/// eigenvector u scaled so that u^T v = 1.
template <typename Scalar>
struct SpectralTriple {
  Scalar lambda1{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> u;
};

namespace detail {

template <typename MatrixType>
constexpr bool is_sparse_v =
    std::is_base_of_v<Eigen::SparseMatrixBase<MatrixType>, MatrixType>;

template <typename MatrixType>
std::vector<std::vector<int>> support_of(const MatrixType& m) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m.rows()));
  if constexpr (is_sparse_v<MatrixType>) {
    for (Eigen::Index k = 0; k < m.outerSize(); ++k)
      for (typename MatrixType::InnerIterator it(m, k); it; ++it)
        if (it.value() != 0 && it.row() != it.col())
          adj[it.row()].push_back(static_cast<int>(it.col()));
  } else {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (i != j && m(i, j) != 0) adj[i].push_back(static_cast<int>(j));
  }
  return adj;
}

template <typename MatrixType>
void require_nonnegative(const MatrixType& m) {
  if constexpr (is_sparse_v<MatrixType>) {
    for (Eigen::Index k = 0; k < m.outerSize(); ++k)
      for (typename MatrixType::InnerIterator it(m, k); it; ++it)
        if (!(it.value() >= 0)) throw PreconditionError("matrix has a negative or NaN entry");
  } else {
    if (!(m.array() >= 0).all()) throw PreconditionError("matrix has a negative or NaN entry");
  }
}

}  // namespace detail

/// True when the directed graph of the nonzero pattern is strongly connected.
template <typename MatrixType>
bool is_irreducible(const MatrixType& m) {
  return is_strongly_connected(detail::support_of(m));
}

/// Power iteration for the Perron root of a nonnegative irreducible W.
///
/// Iterates the shifted operator W + s_k I with s_k half the running
/// eigenvalue estimate, which removes the stalling on periodic
/// (imprimitive) patterns without changing the eigenvectors. Converged when
/// ||W v - lambda v|| <= tol * lambda with ||v|| = 1.
template <typename MatrixType>
Eigenpair<typename MatrixType::Scalar> dominant_eigenpair(const MatrixType& W, Side side,
                                                          const PowerIterationOptions& opts = {}) {
  using Scalar = typename MatrixType::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (W.rows() != W.cols()) throw PreconditionError("matrix must be square");
  if (!(opts.tol > 0)) throw PreconditionError("tol must be positive");
  const Eigen::Index n = W.rows();
  if (n == 0) throw PreconditionError("matrix is empty");
  detail::require_nonnegative(W);
  if (!is_irreducible(W))
    throw PreconditionError("matrix graph is not strongly connected (matrix is reducible)");

  auto apply = [&](const Vec& x) -> Vec {
    if (side == Side::right) return W * x;
    return W.transpose() * x;
  };

  Eigenpair<Scalar> out;
  Vec v = Vec::Constant(n, Scalar(1) / std::sqrt(Scalar(n)));
  Vec wv = apply(v);
  Scalar lambda = v.dot(wv);
  Scalar residual = std::numeric_limits<Scalar>::infinity();
  for (int it = 1; it <= opts.max_iter; ++it) {
    const Scalar shift = lambda / 2;
    Vec next = wv + shift * v;
    next /= next.norm();
    v = std::move(next);
    wv = apply(v);
    lambda = v.dot(wv);
    if (!(lambda > 0)) throw PreconditionError("spectral radius is zero");
    residual = (wv - lambda * v).norm() / lambda;
    if (residual <= opts.tol) {
      out.value = lambda;
      out.vector = v.cwiseMax(Scalar(0));
      out.vector /= out.vector.norm();
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                             " iterations",
                         static_cast<double>(residual),
                         std::vector<double>(v.data(), v.data() + v.size()));
}

/// Right and left Perron vectors computed with the same routine, then
/// normalized to u^T v = 1.
template <typename MatrixType>
SpectralTriple<typename MatrixType::Scalar> spectral_triple(const MatrixType& W,
                                                            const PowerIterationOptions& opts = {}) {
  const auto right = dominant_eigenpair(W, Side::right, opts);
  const auto left = dominant_eigenpair(W, Side::left, opts);
  SpectralTriple<typename MatrixType::Scalar> t;
  t.lambda1 = right.value;
  t.v = right.vector;
  t.u = left.vector / left.vector.dot(right.vector);
  return t;
}

/// Psi(A, B) = sum_i u_i v_i (A v)_i / (B v)_i with (u, v) the left/right
/// Perron vectors of A (given as `a`), u^T v = 1. Throws ZeroDenominatorError naming the
/// first node whose B-row sees none of v.
template <typename Scalar, typename MatrixA, typename MatrixB>
Scalar psi_from_triple(const SpectralTriple<Scalar>& a, const MatrixA& A, const MatrixB& B) {
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> av = A * a.v;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bv = B * a.v;
  Scalar total = 0;
  for (Eigen::Index i = 0; i < bv.size(); ++i) {
    const Scalar weight = a.u(i) * a.v(i);
    if (weight == 0) continue;
    if (!(bv(i) > 0))
      throw ZeroDenominatorError("Psi denominator vanishes at node " + std::to_string(i) +
                                     ": the second matrix has no weight toward the support of v",
                                 static_cast<int>(i));
    total += weight * av(i) / bv(i);
  }
  return total;
}

template <typename MatrixA, typename MatrixB>
typename MatrixA::Scalar psi(const MatrixA& A, const MatrixB& B,
                             const PowerIterationOptions& opts = {}) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw PreconditionError("Psi needs matrices of equal size");
  detail::require_nonnegative(B);
  return psi_from_triple(spectral_triple(A, opts), A, B);
}

/// Spectral radius of a nonnegative, possibly reducible, square matrix: the
/// largest Perron root over the strongly connected components.
double spectral_radius(const SparseMatrix& W, const PowerIterationOptions& opts = {});

// ---------------------------------------------------------------------------
// Multilayer descriptors (double precision, on MultilayerNetwork).

enum class Regime { small_kappa, large_kappa };

/// tau_c(k) ~ intercept + slope * k for small k (k = kappa_bar), or
/// intercept + slope / k for large k.
struct PerturbationCoefficients {
  double intercept = 0;
  double slope = 0;
};

PerturbationCoefficients threshold_perturbation(const MultilayerNetwork& net, Regime regime,
                                                const PowerIterationOptions& opts = {});

enum class Scenario { monotone, overshoot, undershoot, mixed };

const char* to_string(Scenario s);

struct ScenarioReport {
  Scenario scenario = Scenario::mixed;
  double psi_sa = 0;  // Psi(W_S, W_A)
  double psi_as = 0;  // Psi(W_A, W_S)
  double lambda_s = 0;
  double lambda_a = 0;
  bool degenerate = false;          // some Psi within the tie band of 1
  bool radius_ordered = false;      // lambda_s > lambda_a
  std::string note;
};

inline constexpr double kScenarioTieBand = 1e-9;

ScenarioReport classify_scenario(const MultilayerNetwork& net,
                                 const PowerIterationOptions& opts = {});

}  // namespace acsais
