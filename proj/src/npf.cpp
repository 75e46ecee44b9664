#include "acsais/npf.hpp"

#include "acsais/mconnect.hpp"

#include <cmath>
#include <exception>

namespace acsais {

AcsaisMap::AcsaisMap(MultilayerNetwork net, double kappa_bar)
    : net_(std::move(net)), kappa_bar_(kappa_bar) {
  if (!(kappa_bar >= 0) || !std::isfinite(kappa_bar))
    throw PreconditionError("kappa_bar must be finite and nonnegative");
}

Vector AcsaisMap::operator()(const Vector& z) const {
  const Vector s = net_.layer_s().matrix() * z;
  const Vector a = net_.layer_a().matrix() * z;
  Vector out(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    const double den = kappa_bar_ * s(i) + a(i);
    out(i) = den > 0 ? a(i) * s(i) / den : 0.0;
  }
  return out;
}

NpfSolution acsais_threshold(const MultilayerNetwork& net, double kappa_bar,
                             const ThresholdOptions& opts) {
  if (!(kappa_bar >= 0)) throw PreconditionError("kappa_bar must be nonnegative");
  if (opts.check_connectivity && !is_m_connected(net))
    throw PreconditionError(
        "network is not M-connected: no aggregation step yields a strongly connected graph, so "
        "the threshold equation has no positive solution");

  const bool linear_s = kappa_bar == 0;
  const bool linear_a = std::isinf(kappa_bar);
  if (linear_s || linear_a) {
    const auto& w = linear_s ? net.layer_s().matrix() : net.layer_a().matrix();
    const auto pair = dominant_eigenpair(w, Side::right, opts.power);
    NpfSolution sol;
    sol.z = pair.vector;
    sol.lambda = pair.value;
    sol.tau_c = 1.0 / pair.value;
    sol.iterations = pair.iterations;
    sol.residual = pair.residual;
    return sol;
  }

  const AcsaisMap map(net, kappa_bar);
  NpfOptions npf = opts.npf;
  const Vector z0 = npf.z0 ? *npf.z0 : Vector::Constant(net.size(), 1.0);
  const double scale = map(z0).norm() / z0.norm();
  if (scale > 0) npf.c = opts.npf.c * scale;
  NpfSolution sol = solve_npf(map, npf);
  sol.tau_c = 1.0 / ((kappa_bar + 1.0) * sol.lambda);
  return sol;
}

std::vector<ThresholdPoint> sweep_threshold(const MultilayerNetwork& net,
                                            const std::vector<double>& kappa_grid,
                                            const ThresholdOptions& opts, bool warm_start) {
  if (opts.check_connectivity && !is_m_connected(net))
    throw PreconditionError("network is not M-connected; the threshold sweep is undefined");
  ThresholdOptions point_opts = opts;
  point_opts.check_connectivity = false;

  std::vector<ThresholdPoint> out;
  out.reserve(kappa_grid.size());
  std::optional<Vector> previous;
  for (const double k : kappa_grid) {
    ThresholdPoint pt;
    pt.kappa_bar = k;
    try {
      if (warm_start && previous) point_opts.npf.z0 = previous;
      const NpfSolution sol = acsais_threshold(net, k, point_opts);
      pt.tau_c = sol.tau_c;
      pt.iterations = sol.iterations;
      pt.ok = true;
      if (k > 0 && std::isfinite(k) && (sol.z.array() > 0).all()) previous = sol.z;
    } catch (const std::exception& err) {
      pt.error = err.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace acsais
