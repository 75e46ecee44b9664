#include "acsais/errors.hpp"
#include "acsais/meanfield.hpp"
#include "acsais/npf.hpp"
#include "acsais/rng.hpp"
#include "acsais/stochastic.hpp"

#include "fixtures.hpp"
#include "stochastic_oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace acsais;
using namespace acsais::testing;

TEST(SplitMix64, SubstreamsAreReproducibleAndDistinct) {
  SplitMix64 a(SplitMix64::substream(7, 0)), b(SplitMix64::substream(7, 0)), c(SplitMix64::substream(7, 1));
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
  SplitMix64 r(1);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(TotalRates, RateLaws) {
  const EpidemicParams e{0.3, 1.1, 0.7};
  const MultilayerNetwork net(WeightedDigraph(3, {{0, 1, 2.0}, {2, 1, 1.0}}),
                              WeightedDigraph(3, {{2, 0, 1.0}, {2, 1, 3.0}}));
  auto r = total_rates({NodeState::S, NodeState::S, NodeState::S}, net, e);
  for (const auto& x : r) EXPECT_EQ(x.total(), 0.0);

  r = total_rates({NodeState::S, NodeState::I, NodeState::S}, net, e);
  EXPECT_DOUBLE_EQ(r[0].infection, 2 * e.beta);
  EXPECT_DOUBLE_EQ(r[0].alerting, 2 * e.kappa);
  EXPECT_DOUBLE_EQ(r[1].recovery, e.delta);

  r = total_rates({NodeState::I, NodeState::I, NodeState::A}, net, e);
  EXPECT_DOUBLE_EQ(r[2].infection, 4 * e.beta);
  EXPECT_DOUBLE_EQ(r[2].alerting, 0.0);
}

TEST(Simulate, TwoNodeChainMatchesTheGenerator) {
  const TwoNodeChain chain;
  const auto net = chain.net();
  for (const double t : {0.7, 40.0}) {
    SimConfig cfg;
    cfg.params = chain.e;
    cfg.initial_infected = {1};
    cfg.t_end = t;
    cfg.replicas = 10000;
    cfg.seed = 99;
    cfg.record_events = false;
    const auto runs = simulate(net, cfg);
    Vector freq = Vector::Zero(9);
    for (const auto& r : runs) freq(TwoNodeChain::index(r.final_state[0], r.final_state[1])) += 1;
    freq /= runs.size();
    const Vector p = chain.distribution_at(t);
    for (int s = 0; s < 9; ++s) {
      const double sigma = std::sqrt(p(s) * (1 - p(s)) / runs.size());
      EXPECT_LE(std::abs(freq(s) - p(s)), 3 * sigma + 1e-12) << "t " << t << " state " << s;
    }
  }
}

TEST(Simulate, NoAlertingMatchesAnIndependentSisRun) {
  std::mt19937_64 rng(2);
  const auto net = random_m_connected(25, 3.0, rng);
  const double lambda = dominant_eigenpair(net.layer_s().matrix(), Side::right).value;
  SimConfig cfg;
  cfg.params = {1.5 / lambda, 1.0, 0.0};
  cfg.initial_infected = {0, 5, 9, 13};
  cfg.t_end = 30;
  cfg.seed = 1234;
  for (int replica = 0; replica < 5; ++replica) {
    const auto run = simulate_replica(net, cfg, replica);
    const auto ref = sis_reference(net, cfg.params.beta, 1.0, cfg.initial_infected, 30, 1234, replica);
    ASSERT_EQ(run.events.size(), ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_EQ(run.events[k].node, ref[k].node);
      EXPECT_EQ(run.events[k].to, ref[k].to);
      EXPECT_NEAR(run.events[k].time, ref[k].time, 1e-9 * ref[k].time);
    }
    EXPECT_EQ(run.transitions[1] + run.transitions[2], 0);
  }
}

TEST(Simulate, FarBelowThresholdDiesOut) {
  std::mt19937_64 rng(3);
  const auto net = random_m_connected(30, 3.0, rng);
  const double lambda = dominant_eigenpair(net.layer_s().matrix(), Side::right).value;
  SimConfig cfg;
  cfg.params = {0.2 / lambda, 1.0, 0.0};
  cfg.initial_infected = {0, 1, 2};
  cfg.replicas = 200;
  cfg.t_end = 50;
  cfg.record_events = false;
  int died = 0;
  for (const auto& r : simulate(net, cfg)) died += !r.survived;
  EXPECT_GT(died, 190);
}

TEST(Simulate, PureRecoveryHasExponentialLifetimes) {
  const auto net = random_m_connected(50, 3.0, *std::make_unique<std::mt19937_64>(4));
  SimConfig cfg;
  cfg.params = {0.0, 2.0, 0.0};
  for (int i = 0; i < 50; ++i) cfg.initial_infected.push_back(i);
  cfg.replicas = 40;
  cfg.t_end = 100;
  double sum = 0;
  long count = 0;
  for (const auto& r : simulate(net, cfg)) {
    for (const auto& ev : r.events) {
      ASSERT_EQ(ev.from, NodeState::I);
      ASSERT_EQ(ev.to, NodeState::S);
      sum += ev.time;
      ++count;
    }
    EXPECT_FALSE(r.survived);
  }
  ASSERT_EQ(count, 2000);
  // Mean of 2000 Exp(2) draws: 0.5 with standard error about 0.011.
  EXPECT_NEAR(sum / count, 0.5, 0.035);
}

TEST(Simulate, EventsAreLegalOrderedAndAuditClean) {
  std::mt19937_64 rng(5);
  const auto net = random_m_connected(40, 3.0, rng);
  const double lambda = dominant_eigenpair(net.layer_s().matrix(), Side::right).value;
  SimConfig cfg;
  cfg.params = {3.0 / lambda, 1.0, 2.0 / lambda};
  cfg.initial_infected = {0, 1, 2, 3, 4};
  cfg.t_end = 20;
  cfg.audit_interval = 1;
  cfg.seed = 77;
  const auto r = simulate_replica(net, cfg, 0);
  ASSERT_GT(r.events.size(), 100u);
  std::vector<NodeState> state(40, NodeState::S);
  for (int i : cfg.initial_infected) state[i] = NodeState::I;
  double last = 0;
  for (const auto& ev : r.events) {
    EXPECT_GT(ev.time, last);
    last = ev.time;
    EXPECT_EQ(state[ev.node], ev.from);
    const bool legal = (ev.from == NodeState::S && ev.to != NodeState::S) ||
                       (ev.from == NodeState::A && ev.to == NodeState::I) ||
                       (ev.from == NodeState::I && ev.to == NodeState::S);
    EXPECT_TRUE(legal);
    state[ev.node] = ev.to;
  }
  EXPECT_EQ(state, r.final_state);
  EXPECT_GT(r.transitions[1], 0);
  EXPECT_GT(r.transitions[2], 0);
}

TEST(Simulate, IdenticalSeedsGiveIdenticalLogs) {
  std::mt19937_64 rng(6);
  const auto net = random_m_connected(20, 3.0, rng);
  SimConfig cfg;
  cfg.params = {0.5, 1.0, 0.4};
  cfg.initial_infected = {0, 1};
  cfg.replicas = 6;
  cfg.t_end = 10;
  cfg.seed = 5;
  const auto a = simulate(net, cfg);
  cfg.workers = 3;
  const auto b = simulate(net, cfg);
  for (int r = 0; r < 6; ++r) {
    std::ostringstream x, y;
    write_event_log(x, a[r]);
    write_event_log(y, b[r]);
    EXPECT_EQ(x.str(), y.str());
  }
  EXPECT_NE(a[0].events, a[1].events);
}

TEST(Simulate, ConfigValidation) {
  const auto net = twelve_node_network();
  SimConfig cfg;
  cfg.initial_infected = {12};
  EXPECT_THROW(simulate(net, cfg), InputError);
  cfg.initial_infected = {1, 1};
  EXPECT_THROW(simulate(net, cfg), InputError);
  cfg.initial_infected = {1};
  cfg.t_end = 0;
  EXPECT_THROW(simulate(net, cfg), InputError);
  cfg.t_end = 1;
  cfg.tail_fraction = 1;
  EXPECT_THROW(simulate(net, cfg), InputError);
}

TEST(MetastablePrevalence, NoInfectionGivesZero) {
  SimConfig cfg;
  cfg.params = {0.0, 1.0, 0.0};
  cfg.initial_infected = {0};
  cfg.replicas = 10;
  const auto est = metastable_prevalence(twelve_node_network(), cfg);
  EXPECT_EQ(est.mean, 0.0);
  EXPECT_EQ(est.survivors, 0);
  EXPECT_EQ(est.replicas, 10);
}

TEST(MetastablePrevalence, DenseGraphAgreesWithMeanField) {
  const int n = 40;
  const auto s = complete(n, 1.0);
  const MultilayerNetwork net(s, s.scaled(0.5));
  const double tau = 4.0 / (n - 1);
  const double kappa_bar = 1.0;
  const auto mf = integrate_to_steady_state(net, EpidemicParams::from_tau(tau, kappa_bar), uniform_seed(n));
  SimConfig cfg;
  cfg.params = EpidemicParams::from_tau(tau, kappa_bar);
  for (int i = 0; i < n; ++i) cfg.initial_infected.push_back(i);
  cfg.replicas = 40;
  cfg.t_end = 100;
  const auto est = metastable_prevalence(net, cfg);
  EXPECT_EQ(est.survivors, 40);
  EXPECT_NEAR(est.mean, mean_prevalence(mf.state), 0.1 * mean_prevalence(mf.state));
}
