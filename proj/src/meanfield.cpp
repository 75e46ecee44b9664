#include "acsais/meanfield.hpp"

#include "acsais/errors.hpp"
#include "acsais/parallel.hpp"
#include "acsais/spectral.hpp"

#include <cmath>
#include <exception>

namespace acsais {

void EpidemicParams::validate() const {
  if (!std::isfinite(beta) || beta < 0) throw InputError("beta must be finite and >= 0");
  if (!std::isfinite(delta) || !(delta > 0)) throw InputError("delta must be finite and > 0");
  if (!std::isfinite(kappa) || kappa < 0) throw InputError("kappa must be finite and >= 0");
}

EpidemicParams EpidemicParams::from_tau(double tau, double kappa_bar) {
  return {tau, 1.0, kappa_bar * tau};
}

MfState mf_derivative(const MfState& s, const MultilayerNetwork& net, const EpidemicParams& prm) {
  const Vector ys = net.layer_s().matrix() * s.p;
  const Vector za = net.layer_a().matrix() * s.p;
  const auto free = (1.0 - s.q.array() - s.p.array());
  MfState d;
  d.p = -prm.delta * s.p.array() + prm.beta * free * ys.array() + prm.beta * s.q.array() * za.array();
  d.q = prm.kappa * free * ys.array() - prm.beta * s.q.array() * za.array();
  return d;
}

MfState uniform_seed(Index n, double p0) {
  return {Vector::Constant(n, p0), Vector::Zero(n)};
}

namespace {

double rate_norm(const MfState& d) {
  return std::max(d.p.lpNorm<Eigen::Infinity>(), d.q.lpNorm<Eigen::Infinity>());
}

MfState axpy(const MfState& s, double h, const MfState& d) {
  return {s.p + h * d.p, s.q + h * d.q};
}

constexpr double kClampBand = 1e-12;

// Linear stability of the disease-free state (0, q): the infection grows iff
// beta * rho(diag(1 - q) W_S + diag(q) W_A) > delta.
bool disease_free_stable(const MultilayerNetwork& net, const EpidemicParams& prm, const Vector& q) {
  if (prm.beta == 0) return true;
  const Vector free = Vector::Ones(q.size()) - q;
  const SparseMatrix m = free.asDiagonal() * net.layer_s().matrix() + q.asDiagonal() * net.layer_a().matrix();
  return prm.beta * spectral_radius(m) <= prm.delta;
}

// Clamps tiny breaches; returns false for a breach larger than the band.
bool enforce_simplex(MfState& s, double& max_excess) {
  for (Index i = 0; i < s.p.size(); ++i) {
    double& p = s.p(i);
    double& q = s.q(i);
    if (!std::isfinite(p) || !std::isfinite(q)) return false;
    if (p < -kClampBand || q < -kClampBand) return false;
    const double excess = p + q - 1.0;
    if (excess > kClampBand) return false;
    max_excess = std::max(max_excess, excess);
    p = std::max(p, 0.0);
    q = std::max(q, 0.0);
    if (p + q > 1.0) {
      // Remove the excess from the larger coordinate.
      if (p >= q) p = 1.0 - q;
      else q = 1.0 - p;
    }
  }
  return true;
}

}  // namespace

SteadyState integrate_to_steady_state(const MultilayerNetwork& net, const EpidemicParams& params,
                                      const MfState& init, const IntegratorOptions& opts) {
  params.validate();
  if (!(opts.dt > 0)) throw PreconditionError("dt must be positive");
  if (!(opts.t_max > 0)) throw PreconditionError("t_max must be positive");
  if (init.p.size() != net.size() || init.q.size() != net.size())
    throw PreconditionError("initial state has the wrong dimension");

  SteadyState out;
  out.state = init;
  double unused = 0;
  if (!enforce_simplex(out.state, unused))
    throw PreconditionError("initial state violates 0 <= p, q and p + q <= 1");

  // Times are in units of 1/delta.
  const double t_end = opts.t_max / params.delta;
  double dt = opts.dt / params.delta;
  int halvings = 0;
  MfState& s = out.state;
  MfState k1 = mf_derivative(s, net, params);
  // Close to p = 0 the derivative falls below settle_tol even while the
  // infection still grows slowly, so a small-p state only settles once (0, q)
  // is known to be stable. An unstable verdict holds until p leaves that range.
  bool near_unstable = false;
  while (true) {
    out.rate = rate_norm(k1);
    const bool small = s.p.lpNorm<Eigen::Infinity>() < kPrevalenceCutoff;
    if (!small) near_unstable = false;
    if (out.rate <= opts.settle_tol && !near_unstable) {
      if (!small || disease_free_stable(net, params, s.q)) {
        out.settled = true;
        break;
      }
      near_unstable = true;
    }
    if (out.t >= t_end) break;
    const double h = std::min(dt, t_end - out.t);
    const MfState k2 = mf_derivative(axpy(s, h / 2, k1), net, params);
    const MfState k3 = mf_derivative(axpy(s, h / 2, k2), net, params);
    const MfState k4 = mf_derivative(axpy(s, h, k3), net, params);
    MfState next{s.p + h / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p),
                 s.q + h / 6 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q)};
    if (!enforce_simplex(next, out.max_simplex_excess)) {
      if (++halvings > opts.max_halvings)
        throw NumericalError("mean-field integration left the probability simplex at t = " +
                             std::to_string(out.t) + " even after " +
                             std::to_string(opts.max_halvings) + " step halvings; use a smaller dt");
      dt /= 2;
      continue;
    }
    s = std::move(next);
    out.t += h;
    ++out.steps;
    k1 = mf_derivative(s, net, params);
  }
  out.dt = dt * params.delta;
  return out;
}

EquilibriumResidual equilibrium_residual(const MfState& s, const MultilayerNetwork& net,
                                         const EpidemicParams& params) {
  const Vector ys = net.layer_s().matrix() * s.p;
  const Vector za = net.layer_a().matrix() * s.p;
  const double kb = params.kappa_bar();
  EquilibriumResidual r;
  for (Index i = 0; i < s.p.size(); ++i) {
    const double den = kb * ys(i) + za(i);
    const double f = den > 0 ? za(i) * ys(i) / den : 0.0;
    const double lhs = s.p(i) / (1.0 - s.p(i));
    r.infection = std::max(r.infection, std::abs(lhs - params.tau() * (kb + 1) * f));
    const double q = den > 0 ? kb * ys(i) * (1.0 - s.p(i)) / den : s.q(i);
    r.alert = std::max(r.alert, std::abs(s.q(i) - q));
  }
  return r;
}

std::vector<PrevalencePoint> steady_prevalence_sweep(const MultilayerNetwork& net, double tau,
                                                     const std::vector<double>& kappa_grid,
                                                     const IntegratorOptions& opts, int workers) {
  std::vector<PrevalencePoint> out(kappa_grid.size());
  parallel_for(kappa_grid.size(), workers, [&](std::size_t k) {
    PrevalencePoint& pt = out[k];
    pt.kappa_bar = kappa_grid[k];
    try {
      if (!std::isfinite(pt.kappa_bar) || pt.kappa_bar < 0)
        throw InputError("kappa_bar must be finite and >= 0 for the mean-field sweep");
      const auto steady = integrate_to_steady_state(
          net, EpidemicParams::from_tau(tau, pt.kappa_bar), uniform_seed(net.size()), opts);
      pt.prevalence = mean_prevalence(steady.state);
      pt.settled = steady.settled;
      pt.ok = true;
    } catch (const std::exception& err) {
      pt.error = err.what();
    }
  });
  return out;
}

EmpiricalThreshold empirical_threshold(const MultilayerNetwork& net, double kappa_bar,
                                       const BisectionOptions& opts) {
  if (!(opts.rel_tol > 0)) throw PreconditionError("rel_tol must be positive");
  const double lambda_s = dominant_eigenpair(net.layer_s().matrix(), Side::right).value;
  EmpiricalThreshold r;
  auto steady = [&](double tau, const MfState& init) {
    ++r.evaluations;
    return integrate_to_steady_state(net, EpidemicParams::from_tau(tau, kappa_bar), init, opts.integrator)
        .state;
  };
  auto positive = [&](const MfState& s) { return mean_prevalence(s) > opts.cutoff; };

  double lo = 1e-3 / lambda_s;
  double hi = 1e3 / lambda_s;
  MfState upper = steady(hi, uniform_seed(net.size()));
  if (positive(steady(lo, uniform_seed(net.size()))) || !positive(upper))
    throw NumericalError("threshold bracket [1e-3, 1e3] / lambda1(W_S) shows no prevalence "
                         "sign change");
  while (hi / lo - 1.0 > opts.rel_tol) {
    const double mid = std::sqrt(lo * hi);
    MfState s = steady(mid, upper);
    if (positive(s)) {
      hi = mid;
      upper = std::move(s);
    } else {
      lo = mid;
    }
  }
  r.lo = lo;
  r.hi = hi;
  r.tau = std::sqrt(lo * hi);
  return r;
}

}  // namespace acsais
