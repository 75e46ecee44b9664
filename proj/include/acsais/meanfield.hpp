#pragma once

// Mean-field AC-SAIS dynamics on a two-layer network:
//   dp_i/dt = -delta p_i + beta (1 - q_i - p_i) sum_j w^S_ij p_j + beta q_i sum_j w^A_ij p_j
//   dq_i/dt = kappa (1 - q_i - p_i) sum_j w^S_ij p_j - beta q_i sum_j w^A_ij p_j

#include "acsais/graph.hpp"

#include <string>
#include <vector>

namespace acsais {

struct EpidemicParams {
  double beta = 1;   // infection rate
  double delta = 1;  // curing rate
  double kappa = 0;  // alerting rate

  double tau() const { return beta / delta; }
  double kappa_bar() const { return kappa / beta; }

  /// Throws InputError unless beta >= 0, delta > 0, kappa >= 0, all finite.
  /// beta = 0 is accepted (no infection process).
  void validate() const;

  /// delta = 1, beta = tau, kappa = kbar * tau.
  static EpidemicParams from_tau(double tau, double kappa_bar);
};

struct MfState {
  Vector p;  // infection probabilities
  Vector q;  // alert probabilities
};

MfState mf_derivative(const MfState& state, const MultilayerNetwork& net,
                      const EpidemicParams& params);

/// p = p0 uniform, q = 0.
MfState uniform_seed(Index n, double p0 = 0.01);

struct IntegratorOptions {
  double dt = 0.01;          // in units of 1/delta
  double t_max = 1e4;        // in units of 1/delta
  double settle_tol = 1e-10; // on ||(dp, dq)||_inf
  int max_halvings = 30;
};

inline constexpr double kPrevalenceCutoff = 1e-6;

struct SteadyState {
  MfState state;
  bool settled = false;
  double t = 0;              // time reached
  double rate = 0;           // ||(dp, dq)||_inf at the returned state
  double dt = 0;             // step in use at the end (smaller after halvings)
  long long steps = 0;
  double max_simplex_excess = 0;  // max over the run of p_i + q_i - 1
};

/// Classical RK4 until settled or t_max. Settled means ||(dp, dq)||_inf <=
/// settle_tol, and when max p_i < kPrevalenceCutoff also that the disease-free
/// state (0, q) is linearly stable. States outside the simplex by at most
/// 1e-12 are clamped back; a larger breach retries the step with half dt, and
/// throws NumericalError after max_halvings.
SteadyState integrate_to_steady_state(const MultilayerNetwork& net, const EpidemicParams& params,
                                      const MfState& init, const IntegratorOptions& opts = {});

inline double mean_prevalence(const MfState& s) { return s.p.mean(); }

/// Largest violations of the equilibrium identities at a state:
/// p_i / (1 - p_i) = tau (kbar + 1) F(p)_i and
/// q_i = kbar S_i (1 - p_i) / (kbar S_i + A_i), with S = W_S p and A = W_A p.
struct EquilibriumResidual {
  double infection = 0;
  double alert = 0;
};
EquilibriumResidual equilibrium_residual(const MfState& s, const MultilayerNetwork& net,
                                         const EpidemicParams& params);


struct PrevalencePoint {
  double kappa_bar = 0;
  double prevalence = 0;
  bool settled = false;
  bool ok = false;
  std::string error;
};

/// Steady mean prevalence at delta = 1, beta = tau for each kbar, from the
/// uniform seed. Point failures are recorded and the sweep continues.
std::vector<PrevalencePoint> steady_prevalence_sweep(const MultilayerNetwork& net, double tau,
                                                     const std::vector<double>& kappa_grid,
                                                     const IntegratorOptions& opts = {},
                                                     int workers = 1);

struct BisectionOptions {
  double rel_tol = 1e-3;  // stop when hi / lo - 1 <= rel_tol
  double cutoff = kPrevalenceCutoff;
  IntegratorOptions integrator;
};

struct EmpiricalThreshold {
  double tau = 0;  // geometric midpoint of the final bracket
  double lo = 0;   // largest tau found with vanishing prevalence
  double hi = 0;   // smallest tau found with positive prevalence
  int evaluations = 0;
};

/// Bisection in log tau over positivity of the steady mean prevalence,
/// bracketed by [1e-3, 1e3] / lambda1(W_S). Throws NumericalError when the
/// bracket ends do not differ in sign.
///
/// Probes continue downward in tau: each one starts from the steady state of
/// the current upper bracket end. Between tau_c(kbar) and tau_c(0) the state
/// (0, 0) can be stable next to the endemic state, so a fixed small seed
/// would report the wrong crossing. The upper end itself starts from
/// uniform_seed.
EmpiricalThreshold empirical_threshold(const MultilayerNetwork& net, double kappa_bar,
                                       const BisectionOptions& opts = {});

}  // namespace acsais
