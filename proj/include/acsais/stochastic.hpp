#pragma once

// Exact simulation of the AC-SAIS Markov chain. Legal transitions:
//   S -> I  at beta  * Y_i     Y_i = sum of w^S_ij over infected j
//   S -> A  at kappa * Y_i
//   A -> I  at beta  * Z_i     Z_i = sum of w^A_ij over infected j
//   I -> S  at delta
// There is no A -> S transition.

#include "acsais/graph.hpp"
#include "acsais/meanfield.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace acsais {

enum class NodeState : std::uint8_t { S, A, I };

char to_char(NodeState s);

struct NodeRates {
  double infection = 0;  // S -> I or A -> I
  double alerting = 0;   // S -> A
  double recovery = 0;   // I -> S
  double total() const { return infection + alerting + recovery; }
};

/// Per-node transition rates computed from scratch.
std::vector<NodeRates> total_rates(const std::vector<NodeState>& state,
                                   const MultilayerNetwork& net, const EpidemicParams& params);

struct SimConfig {
  EpidemicParams params;
  std::vector<int> initial_infected;
  double t_end = 100;         // in units of 1/delta
  std::uint64_t seed = 1;
  int replicas = 1;
  double tail_fraction = 0.5;
  int audit_interval = 0;     // compare incremental rates with total_rates every K events; 0 = off
  bool record_events = true;
  int workers = 1;

  /// Throws InputError on invalid fields.
  void validate(int n) const;
};

struct Event {
  double time = 0;
  int node = 0;
  NodeState from = NodeState::S;
  NodeState to = NodeState::S;
  friend bool operator==(const Event&, const Event&) = default;
};

struct SimTrajectory {
  int replica = 0;
  std::vector<Event> events;          // empty unless record_events
  long long event_count = 0;
  long long transitions[4] = {};      // S->I, S->A, A->I, I->S
  std::vector<NodeState> final_state; // at t_end or absorption
  double final_prevalence = 0;
  double tail_prevalence = 0;         // time-averaged infected fraction over the tail window
  bool survived = false;              // infected nodes remain at t_end
};

/// Direct-method (Gillespie) run of one replica. Each step draws a waiting
/// time and then a node from a sum tree over node rates; a susceptible node
/// with kappa > 0 consumes a third draw to choose infection over alerting.
/// The RNG stream is SplitMix64::substream(seed, replica).
SimTrajectory simulate_replica(const MultilayerNetwork& net, const SimConfig& config, int replica);

/// config.replicas independent replicas, run on config.workers threads.
std::vector<SimTrajectory> simulate(const MultilayerNetwork& net, const SimConfig& config);

struct MetastableEstimate {
  double mean = 0;    // over surviving replicas; 0 when none survive
  double std_error = 0;
  int survivors = 0;
  int replicas = 0;
};

/// Mean infected fraction over the last tail_fraction of [0, t_end],
/// conditioned on survival at t_end.
MetastableEstimate metastable_prevalence(const MultilayerNetwork& net, const SimConfig& config);
MetastableEstimate summarize(const std::vector<SimTrajectory>& runs);

/// TSV `time<TAB>node<TAB>from<TAB>to` with states as S, A or I.
void write_event_log(std::ostream& out, const SimTrajectory& run);

}  // namespace acsais
