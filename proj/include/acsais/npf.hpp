#pragma once

// Nonlinear Perron-Frobenius machinery for homogeneous concave self-maps of
// the nonnegative cone: subset conditions C1 and C2, primitivity of
// F_c(x) = F(x) + c x, the normalized fixed-point iteration, and the
// AC-SAIS threshold map built on a two-layer network.

#include "acsais/errors.hpp"
#include "acsais/graph.hpp"
#include "acsais/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace acsais {

/// A self-map of the nonnegative cone of R^n.
template <typename F>
concept ConeMap = requires(const F& f, const Vector& x) {
  { f(x) } -> std::convertible_to<Vector>;
  { f.dimension() } -> std::convertible_to<Index>;
};

/// Wraps a closed-form evaluator.
class FunctionMap {
 public:
  FunctionMap(Index n, std::function<Vector(const Vector&)> f) : n_(n), f_(std::move(f)) {}
  Vector operator()(const Vector& x) const { return f_(x); }
  Index dimension() const noexcept { return n_; }

 private:
  Index n_;
  std::function<Vector(const Vector&)> f_;
};

/// Linear map x -> W x for a nonnegative matrix.
template <typename MatrixType>
class LinearMap {
 public:
  explicit LinearMap(MatrixType w) : w_(std::move(w)) {}
  Vector operator()(const Vector& x) const { return w_ * x; }
  Index dimension() const noexcept { return w_.rows(); }

 private:
  MatrixType w_;
};

/// F(z)_i = (W_A z)_i (W_S z)_i / (kbar (W_S z)_i + (W_A z)_i), and 0 when
/// the denominator vanishes. kbar is the relative alerting rate kappa/beta.
class AcsaisMap {
 public:
  AcsaisMap(MultilayerNetwork net, double kappa_bar);

  Vector operator()(const Vector& z) const;
  Index dimension() const noexcept { return net_.size(); }
  double kappa_bar() const noexcept { return kappa_bar_; }
  const MultilayerNetwork& network() const noexcept { return net_; }

 private:
  MultilayerNetwork net_;
  double kappa_bar_;
};

// ---------------------------------------------------------------------------
// Map premises: homogeneity, concavity, monotonicity, super-additivity.

struct PremiseOptions {
  int samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 12345;
};

struct PremiseReport {
  double homogeneity = 0;      // worst relative violation of F(cx) = c F(x)
  double concavity = 0;        // worst shortfall of F(tx + (1-t)y) >= tF(x) + (1-t)F(y)
  double monotonicity = 0;     // worst shortfall of F(x + d) >= F(x), d >= 0
  double superadditivity = 0;  // worst shortfall of F(x + y) >= F(x) + F(y)
  bool passed = false;
};

namespace detail {

inline double shortfall(const Vector& lhs, const Vector& rhs) {
  // How much lhs >= rhs fails, relative to the magnitude involved.
  double worst = 0;
  for (Index i = 0; i < lhs.size(); ++i) {
    const double scale = std::max({1.0, std::abs(lhs(i)), std::abs(rhs(i))});
    worst = std::max(worst, (rhs(i) - lhs(i)) / scale);
  }
  return worst;
}

}  // namespace detail

/// Spot-checks the premises on random samples with entries in [0, 1].
template <ConeMap F>
PremiseReport verify_premises(const F& map, const PremiseOptions& opts = {}) {
  const Index n = map.dimension();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = unit(rng);
    return x;
  };
  PremiseReport r;
  for (int s = 0; s < opts.samples; ++s) {
    const Vector x = draw(), y = draw();
    const double theta = unit(rng);
    const double c = 4.0 * unit(rng);
    const Vector fx = map(x), fy = map(y);

    const Vector fcx = map(c * x);
    const Vector cfx = c * fx;
    r.homogeneity = std::max({r.homogeneity, detail::shortfall(fcx, cfx), detail::shortfall(cfx, fcx)});
    r.concavity = std::max(
        r.concavity, detail::shortfall(map(theta * x + (1 - theta) * y), theta * fx + (1 - theta) * fy));
    r.monotonicity = std::max(r.monotonicity, detail::shortfall(map(x + y), fx));
    r.superadditivity = std::max(r.superadditivity, detail::shortfall(map(x + y), fx + fy));
  }
  r.passed = r.homogeneity <= opts.tol && r.concavity <= opts.tol && r.monotonicity <= opts.tol &&
             r.superadditivity <= opts.tol;
  return r;
}

// ---------------------------------------------------------------------------
// Subset conditions.

inline constexpr int kDefaultSubsetBudget = 20;

struct ConditionReport {
  bool holds = true;
  std::vector<int> witness;  // a violating J (0-indexed) when !holds
};

struct PrimitivityReport {
  bool primitive = true;
  int exponent = 0;                 // smallest M with F_c^M(e_j) > 0 for all j
  std::vector<int> stalled_support; // support that stopped growing when !primitive
};

namespace detail {

inline void require_budget(Index n, int budget) {
  if (n > budget)
    throw BudgetExceededError("exhaustive subset check refused: n = " + std::to_string(n) +
                              " exceeds the budget of " + std::to_string(budget));
  if (n > 62) throw BudgetExceededError("subset masks are limited to 62 nodes");
}

inline Vector indicator(Index n, std::uint64_t mask) {
  Vector e = Vector::Zero(n);
  for (Index i = 0; i < n; ++i)
    if (mask >> i & 1U) e(i) = 1.0;
  return e;
}

inline std::uint64_t positive_mask(const Vector& y) {
  std::uint64_t m = 0;
  for (Index i = 0; i < y.size(); ++i)
    if (y(i) > 0) m |= std::uint64_t{1} << i;
  return m;
}

inline std::vector<int> members(Index n, std::uint64_t mask) {
  std::vector<int> out;
  for (Index i = 0; i < n; ++i)
    if (mask >> i & 1U) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace detail

/// C1: every nonempty proper J has j in J, i outside J with F_i(e_j) > 0.
template <ConeMap F>
ConditionReport check_c1(const F& map, int budget = kDefaultSubsetBudget) {
  const Index n = map.dimension();
  detail::require_budget(n, budget);
  std::vector<std::uint64_t> reach(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) reach[j] = detail::positive_mask(map(detail::indicator(n, std::uint64_t{1} << j)));
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t J = 1; J < full; ++J) {
    std::uint64_t out = 0;
    for (Index j = 0; j < n; ++j)
      if (J >> j & 1U) out |= reach[j];
    if ((out & ~J & full) == 0) return {false, detail::members(n, J)};
  }
  return {};
}

/// C2: every nonempty proper J has i outside J with F_i(e_J) > 0.
template <ConeMap F>
ConditionReport check_c2(const F& map, int budget = kDefaultSubsetBudget) {
  const Index n = map.dimension();
  detail::require_budget(n, budget);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t J = 1; J < full; ++J) {
    const std::uint64_t out = detail::positive_mask(map(detail::indicator(n, J)));
    if ((out & ~J & full) == 0) return {false, detail::members(n, J)};
  }
  return {};
}

/// Primitivity of F_c(x) = c x + F(x). The support of F_c(y) is
/// supp(y) U supp(F(e_supp(y))), so each start e_j is followed through its
/// support sequence; a support that stops growing short of all nodes
/// certifies non-primitivity.
template <ConeMap F>
PrimitivityReport check_primitive(const F& map, double c, int budget = kDefaultSubsetBudget) {
  if (!(c > 0)) throw PreconditionError("primitivity check needs c > 0");
  const Index n = map.dimension();
  detail::require_budget(n, budget);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  PrimitivityReport r;
  for (Index j = 0; j < n; ++j) {
    std::uint64_t support = std::uint64_t{1} << j;
    int steps = 0;
    while (support != full) {
      const Vector y = c * detail::indicator(n, support) + map(detail::indicator(n, support));
      const std::uint64_t next = detail::positive_mask(y);
      if (next == support) {
        r.primitive = false;
        r.exponent = -1;
        r.stalled_support = detail::members(n, support);
        return r;
      }
      support = next;
      ++steps;
    }
    r.exponent = std::max(r.exponent, steps);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fixed-point iteration.

struct NpfOptions {
  double c = 1.0;
  double tol = 1e-12;
  int max_iter = 1000000;
  std::optional<Vector> z0;  // strictly positive start; uniform when absent
};

struct NpfSolution {
  Vector z;             // L2-normalized, strictly positive
  double lambda = 0;    // F(z) = lambda z
  double tau_c = 0;     // 1 / ((kbar + 1) lambda); 1 / lambda for a bare map
  int iterations = 0;
  double residual = 0;  // last ||z_{k+1} - z_k||
  double ratio_spread = 0;  // max_i (F(z)_i / z_i) / min_i (...) - 1
  double shift = 0;     // the c actually used
};

inline constexpr double kMaxRatioSpread = 1e-6;

/// z_{k+1} = (F(z_k) + c z_k) / ||F(z_k) + c z_k||, stopped when successive
/// iterates are within tol. lambda is the Rayleigh value z^T F(z), checked
/// against the per-coordinate ratios F(z)_i / z_i.
template <ConeMap F>
NpfSolution solve_npf(const F& map, const NpfOptions& opts = {}) {
  if (!(opts.c > 0)) throw PreconditionError("shift c must be positive");
  if (!(opts.tol > 0)) throw PreconditionError("tol must be positive");
  const Index n = map.dimension();
  if (n < 1) throw PreconditionError("map dimension must be positive");

  Vector z;
  if (opts.z0) {
    z = *opts.z0;
    if (z.size() != n) throw PreconditionError("z0 has the wrong dimension");
    if (!(z.array() > 0).all()) throw PreconditionError("z0 must be strictly positive");
    z /= z.norm();
  } else {
    z = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  }

  NpfSolution sol;
  sol.shift = opts.c;
  double diff = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < opts.max_iter) {
    ++it;
    Vector y = map(z) + opts.c * z;
    const double norm = y.norm();
    if (!std::isfinite(norm) || !(norm > 0))
      throw NumericalError("iteration produced a non-finite or zero vector at step " +
                           std::to_string(it));
    y /= norm;
    if (!(y.array() > 0).all())
      throw NumericalError("iterate left the positive cone at step " + std::to_string(it));
    diff = (y - z).norm();
    z = std::move(y);
    if (diff <= opts.tol) break;
  }
  if (diff > opts.tol)
    throw ConvergenceError("nonlinear Perron-Frobenius iteration did not converge in " +
                               std::to_string(opts.max_iter) + " iterations",
                           diff, std::vector<double>(z.data(), z.data() + z.size()));

  const Vector fz = map(z);
  const Vector ratios = fz.cwiseQuotient(z);
  sol.z = z;
  sol.lambda = z.dot(fz);
  sol.ratio_spread = ratios.maxCoeff() / ratios.minCoeff() - 1.0;
  sol.iterations = it;
  sol.residual = diff;
  if (!(sol.lambda > 0))
    throw NumericalError("nonlinear eigenvalue is not positive");
  if (!(sol.ratio_spread <= kMaxRatioSpread))
    throw NumericalError("eigen-ratio spread " + std::to_string(sol.ratio_spread) +
                         " exceeds 1e-6: the iterate is not an eigenvector");
  sol.tau_c = 1.0 / sol.lambda;
  return sol;
}

// ---------------------------------------------------------------------------
// AC-SAIS threshold.

/// kbar = infinity selects the linear W_A limit.
inline constexpr double kKappaInfinity = std::numeric_limits<double>::infinity();

struct ThresholdOptions {
  NpfOptions npf;                 // npf.c is relative to the scale of F (see acsais_threshold)
  PowerIterationOptions power;
  bool check_connectivity = true; // verify M-connectivity first
};

/// tau_c(kbar) from z = tau_c (kbar + 1) F(z). kbar = 0 and kbar = infinity
/// are answered by the linear eigenproblems of W_S and W_A. For finite
/// positive kbar the shift is opts.npf.c * ||F(z0)|| / ||z0||, so the same
/// c conditions every kbar alike.
NpfSolution acsais_threshold(const MultilayerNetwork& net, double kappa_bar,
                             const ThresholdOptions& opts = {});

struct ThresholdPoint {
  double kappa_bar = 0;
  double tau_c = 0;
  bool ok = false;
  int iterations = 0;
  std::string error;  // set when !ok
};

/// tau_c over a grid, warm-starting each finite point from the previous
/// solution. Point failures are recorded and the sweep continues.
std::vector<ThresholdPoint> sweep_threshold(const MultilayerNetwork& net,
                                            const std::vector<double>& kappa_grid,
                                            const ThresholdOptions& opts = {},
                                            bool warm_start = true);

}  // namespace acsais
