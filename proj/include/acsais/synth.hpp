#pragma once

// Synthesis of an alert-contact layer W_A for a given base layer W_S with a
// prescribed radius ratio lambda1(W_A) / lambda1(W_S) and a target regime
// for the Psi descriptors.

#include "acsais/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace acsais {

/// Same support as `base`, weights multiplied by scale in (0, 1).
WeightedDigraph synth_social_distancing(const WeightedDigraph& base, double scale);

/// Random strongly connected digraph: a Hamiltonian cycle over a random
/// permutation plus uniformly random extra arcs until the mean out-degree is
/// reached. Weights uniform in [w_lo, w_hi]. With `symmetric`, every arc is
/// paired with its reverse at the same weight.
WeightedDigraph random_strongly_connected(int n, double mean_out_degree, std::mt19937_64& rng,
                                          bool symmetric = false, double w_lo = 0.5,
                                          double w_hi = 1.5);

struct SynthObjective {
  enum class Kind { psi_sa_below, psi_as_above, social_distancing };
  Kind kind = Kind::psi_sa_below;
  double value = 1.0;  // the Psi threshold, or the scale factor

  static SynthObjective psi_sa_below(double t) { return {Kind::psi_sa_below, t}; }
  static SynthObjective psi_as_above(double t) { return {Kind::psi_as_above, t}; }
  static SynthObjective social_distancing(double s) { return {Kind::social_distancing, s}; }
};

struct SynthTarget {
  WeightedDigraph base;        // the S layer; must be strongly connected
  double radius_ratio = 2.0 / 3.0;
  SynthObjective objective;
  int max_steps = 50000;
  std::uint64_t seed = 1;
  bool symmetric = false;      // restrict W_A to symmetric layers (base must be symmetric)
};

struct SearchStep {
  int step = 0;
  double psi_sa = 0;
  double psi_as = 0;
  double lambda_ratio = 0;
  bool accepted = false;
};

struct SynthResult {
  MultilayerNetwork net;
  double psi_sa = 0;
  double psi_as = 0;
  double lambda_ratio = 0;
  bool met = false;   // false: best-found values, objective unmet
  int steps = 0;
  std::vector<SearchStep> log;
};

/// Greedy hill-climb over W_A. Each step proposes a single-arc rewire or a
/// single-weight factor in [0.8, 1.2], rescales W_A to the radius ratio and
/// keeps the proposal only when the objective strictly improves (by more
/// than 1e-12) and W_A stays strongly connected with the pair M-connected.
SynthResult synth_psi_target(const SynthTarget& target);

/// CSV `step,psi_sa,psi_as,lambda_ratio,accepted`.
void write_search_log_csv(std::ostream& out, const std::vector<SearchStep>& log);

}  // namespace acsais
