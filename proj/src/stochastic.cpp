#include "acsais/stochastic.hpp"

#include "acsais/errors.hpp"
#include "acsais/parallel.hpp"
#include "acsais/rng.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace acsais {

char to_char(NodeState s) {
  switch (s) {
    case NodeState::S: return 'S';
    case NodeState::A: return 'A';
    case NodeState::I: return 'I';
  }
  return '?';
}

std::vector<NodeRates> total_rates(const std::vector<NodeState>& state,
                                   const MultilayerNetwork& net, const EpidemicParams& prm) {
  const int n = net.size();
  std::vector<NodeRates> rates(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    NodeRates& r = rates[i];
    if (state[i] == NodeState::I) {
      r.recovery = prm.delta;
      continue;
    }
    const WeightedDigraph& layer = state[i] == NodeState::S ? net.layer_s() : net.layer_a();
    double pressure = 0;
    for (const int j : layer.neighbors(i))
      if (state[j] == NodeState::I) pressure += layer.weight(i, j);
    r.infection = prm.beta * pressure;
    if (state[i] == NodeState::S) r.alerting = prm.kappa * pressure;
  }
  return rates;
}

void SimConfig::validate(int n) const {
  params.validate();
  if (!(t_end > 0) || !std::isfinite(t_end)) throw InputError("t_end must be positive and finite");
  if (replicas < 1) throw InputError("replicas must be at least 1");
  if (!(tail_fraction > 0 && tail_fraction < 1))
    throw InputError("tail_fraction must lie strictly between 0 and 1");
  if (audit_interval < 0) throw InputError("audit_interval must be >= 0");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const int i : initial_infected) {
    if (i < 0 || i >= n) throw InputError("initial infected node " + std::to_string(i) + " out of range");
    if (seen[i]++) throw InputError("initial infected node " + std::to_string(i) + " listed twice");
  }
}

namespace {

// Complete binary tree of partial sums over node rates. Parents are
// recomputed from their children on each update, so no drift accumulates.
class SumTree {
 public:
  explicit SumTree(int n) : leaves_(1) {
    while (leaves_ < n) leaves_ *= 2;
    tree_.assign(2 * static_cast<std::size_t>(leaves_), 0.0);
  }
  void set(int i, double value) {
    std::size_t k = leaves_ + i;
    tree_[k] = value;
    for (k /= 2; k >= 1; k /= 2) tree_[k] = tree_[2 * k] + tree_[2 * k + 1];
  }
  double total() const { return tree_[1]; }
  // Leaf whose cumulative interval contains target, 0 <= target < total().
  int find(double target) const {
    std::size_t k = 1;
    while (k < static_cast<std::size_t>(leaves_)) {
      if (target < tree_[2 * k] || tree_[2 * k + 1] <= 0) {
        k = 2 * k;
      } else {
        target -= tree_[2 * k];
        k = 2 * k + 1;
      }
    }
    return static_cast<int>(k - leaves_);
  }

 private:
  int leaves_;
  std::vector<double> tree_;
};

class Replica {
 public:
  Replica(const MultilayerNetwork& net, const SimConfig& cfg, int replica)
      : net_(net), cfg_(cfg), prm_(cfg.params), n_(net.size()), rng_(SplitMix64::substream(cfg.seed, replica)),
        state_(n_, NodeState::S), ys_(n_, 0.0), za_(n_, 0.0), cnt_s_(n_, 0), cnt_a_(n_, 0), tree_(n_) {
    out_.replica = replica;
    for (const int i : cfg.initial_infected) infect_bookkeeping(i, +1), state_[i] = NodeState::I;
    for (int i = 0; i < n_; ++i) refresh(i);
  }

  SimTrajectory run() {
    const double t_end = cfg_.t_end / prm_.delta;
    const double tail_start = t_end * (1.0 - cfg_.tail_fraction);
    double t = 0;
    double tail_area = 0;
    while (true) {
      const double total = tree_.total();
      const double wait = total > 0 ? -std::log(rng_.uniform()) / total : INFINITY;
      const double t_next = std::min(t + wait, t_end);
      if (t_next > tail_start) tail_area += infected_ * (t_next - std::max(t, tail_start));
      if (t + wait >= t_end) break;
      t += wait;
      step(t, total);
    }
    out_.final_state = state_;
    out_.final_prevalence = static_cast<double>(infected_) / n_;
    out_.tail_prevalence = tail_area / ((t_end - tail_start) * n_);
    out_.survived = infected_ > 0;
    return std::move(out_);
  }

 private:
  void step(double t, double total) {
    const int i = tree_.find(rng_.uniform() * total);
    const NodeState from = state_[i];
    NodeState to;
    int kind;
    if (from == NodeState::I) {
      to = NodeState::S, kind = 3;
    } else if (from == NodeState::A) {
      to = NodeState::I, kind = 2;
    } else if (prm_.kappa > 0 && rng_.uniform() * (prm_.beta + prm_.kappa) >= prm_.beta) {
      to = NodeState::A, kind = 1;
    } else {
      to = NodeState::I, kind = 0;
    }
    state_[i] = to;
    if (to == NodeState::I) infect_bookkeeping(i, +1);
    if (from == NodeState::I) infect_bookkeeping(i, -1);
    refresh(i);

    ++out_.event_count;
    ++out_.transitions[kind];
    if (cfg_.record_events) out_.events.push_back({t, i, from, to});
    if (cfg_.audit_interval > 0 && out_.event_count % cfg_.audit_interval == 0) audit();
  }

  // Adds (sign = +1) or removes (-1) node j's infection from every Y_i, Z_i
  // that counts it, and refreshes the affected node rates.
  void infect_bookkeeping(int j, int sign) {
    infected_ += sign;
    for (const int i : net_.layer_s().reverse_neighbors(j)) {
      cnt_s_[i] += sign;
      ys_[i] = cnt_s_[i] == 0 ? 0.0 : ys_[i] + sign * net_.layer_s().weight(i, j);
      refresh(i);
    }
    for (const int i : net_.layer_a().reverse_neighbors(j)) {
      cnt_a_[i] += sign;
      za_[i] = cnt_a_[i] == 0 ? 0.0 : za_[i] + sign * net_.layer_a().weight(i, j);
      refresh(i);
    }
  }

  double rate(int i) const {
    switch (state_[i]) {
      case NodeState::S: return (prm_.beta + prm_.kappa) * ys_[i];
      case NodeState::A: return prm_.beta * za_[i];
      case NodeState::I: return prm_.delta;
    }
    return 0;
  }

  void refresh(int i) { tree_.set(i, rate(i)); }

  void audit() const {
    const auto fresh = total_rates(state_, net_, prm_);
    for (int i = 0; i < n_; ++i) {
      const double want = fresh[i].total();
      if (std::abs(rate(i) - want) > 1e-9 * std::max(1.0, want))
        throw NumericalError("rate bookkeeping drifted at node " + std::to_string(i) + " after " +
                             std::to_string(out_.event_count) + " events");
    }
  }

  const MultilayerNetwork& net_;
  const SimConfig& cfg_;
  const EpidemicParams prm_;
  const int n_;
  SplitMix64 rng_;
  std::vector<NodeState> state_;
  std::vector<double> ys_, za_;
  std::vector<int> cnt_s_, cnt_a_;
  SumTree tree_;
  int infected_ = 0;
  SimTrajectory out_;
};

}  // namespace

SimTrajectory simulate_replica(const MultilayerNetwork& net, const SimConfig& config, int replica) {
  config.validate(net.size());
  return Replica(net, config, replica).run();
}

std::vector<SimTrajectory> simulate(const MultilayerNetwork& net, const SimConfig& config) {
  config.validate(net.size());
  std::vector<SimTrajectory> runs(static_cast<std::size_t>(config.replicas));
  parallel_for(runs.size(), config.workers, [&](std::size_t r) {
    runs[r] = Replica(net, config, static_cast<int>(r)).run();
  });
  return runs;
}

MetastableEstimate summarize(const std::vector<SimTrajectory>& runs) {
  MetastableEstimate e;
  e.replicas = static_cast<int>(runs.size());
  double sum = 0, sum_sq = 0;
  for (const auto& r : runs) {
    if (!r.survived) continue;
    ++e.survivors;
    sum += r.tail_prevalence;
    sum_sq += r.tail_prevalence * r.tail_prevalence;
  }
  if (e.survivors == 0) return e;
  e.mean = sum / e.survivors;
  if (e.survivors > 1) {
    const double var = std::max(0.0, (sum_sq - e.survivors * e.mean * e.mean) / (e.survivors - 1));
    e.std_error = std::sqrt(var / e.survivors);
  }
  return e;
}

MetastableEstimate metastable_prevalence(const MultilayerNetwork& net, const SimConfig& config) {
  SimConfig quiet = config;
  quiet.record_events = false;
  return summarize(simulate(net, quiet));
}

void write_event_log(std::ostream& out, const SimTrajectory& run) {
  char buf[64];
  out << "time\tnode\tfrom\tto\n";
  for (const Event& e : run.events) {
    std::snprintf(buf, sizeof buf, "%.17g", e.time);
    out << buf << '\t' << e.node << '\t' << to_char(e.from) << '\t' << to_char(e.to) << '\n';
  }
}

}  // namespace acsais
