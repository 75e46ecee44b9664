#include "acsais/synth.hpp"

#include "acsais/errors.hpp"
#include "acsais/mconnect.hpp"
#include "acsais/scc.hpp"
#include "acsais/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace acsais {

WeightedDigraph synth_social_distancing(const WeightedDigraph& base, double scale) {
  if (!(scale > 0 && scale < 1))
    throw PreconditionError("social-distancing scale must lie strictly between 0 and 1");
  return base.scaled(scale);
}

WeightedDigraph random_strongly_connected(int n, double mean_out_degree, std::mt19937_64& rng,
                                          bool symmetric, double w_lo, double w_hi) {
  if (n < 1) throw PreconditionError("node count must be positive");
  if (!(w_lo > 0 && w_hi >= w_lo)) throw PreconditionError("weight range must be positive");
  std::uniform_real_distribution<double> weight(w_lo, w_hi);
  std::uniform_int_distribution<int> node(0, n - 1);
  Matrix w = Matrix::Zero(n, n);
  auto put = [&](int i, int j) {
    const double x = weight(rng);
    w(i, j) = x;
    if (symmetric) w(j, i) = x;
  };
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  if (n > 1)
    for (int k = 0; k < n; ++k) {
      const int i = perm[k], j = perm[(k + 1) % n];
      if (w(i, j) == 0) put(i, j);
    }

  const long max_arcs = static_cast<long>(n) * (n - 1);
  const long target = std::min<long>(max_arcs, std::lround(mean_out_degree * n));
  long arcs = (w.array() > 0).count();
  while (arcs < target) {
    const int i = node(rng), j = node(rng);
    if (i == j || w(i, j) > 0) continue;
    put(i, j);
    arcs = (w.array() > 0).count();
  }
  return WeightedDigraph::from_matrix(w);
}

namespace {

struct Candidate {
  Matrix a;                // unscaled W_A
  double psi_sa = 0;       // after rescaling to the radius ratio
  double psi_as = 0;
  double lambda_ratio = 0;
  double factor = 1;       // rescaling factor applied to `a`
};

class Evaluator {
 public:
  Evaluator(const WeightedDigraph& base, double ratio)
      : s_(base.dense()), ratio_(ratio), ts_(spectral_triple(s_)), sv_(s_ * ts_.v) {}

  // Returns false when the layer or the pair breaks the connectivity constraints.
  bool evaluate(Candidate& c) const {
    if (!is_strongly_connected(support_lists(c.a))) return false;
    const auto ta = spectral_triple(c.a);
    c.factor = ratio_ * ts_.lambda1 / ta.lambda1;
    const Vector av = c.a * ts_.v;
    double psi_sa = 0;
    for (Index i = 0; i < av.size(); ++i) {
      if (!(av(i) > 0)) return false;
      psi_sa += ts_.u(i) * ts_.v(i) * sv_(i) / av(i);
    }
    c.psi_sa = psi_sa / c.factor;
    c.psi_as = c.factor * psi_from_triple(ta, c.a, s_);
    c.lambda_ratio = c.factor * ta.lambda1 / ts_.lambda1;
    return true;
  }

  const Matrix& s() const { return s_; }

 private:
  Matrix s_;
  double ratio_;
  SpectralTriple<double> ts_;
  Vector sv_;
};

double score(const SynthObjective& obj, const Candidate& c) {
  return obj.kind == SynthObjective::Kind::psi_sa_below ? c.psi_sa : -c.psi_as;
}

bool met(const SynthObjective& obj, const Candidate& c) {
  return obj.kind == SynthObjective::Kind::psi_sa_below ? c.psi_sa < obj.value
                                                        : c.psi_as > obj.value;
}

MultilayerNetwork assemble(const WeightedDigraph& base, const Candidate& c) {
  return MultilayerNetwork(base, WeightedDigraph::from_matrix(c.a * c.factor));
}

constexpr double kStrictImprovement = 1e-12;

}  // namespace

SynthResult synth_psi_target(const SynthTarget& t) {
  if (!(t.radius_ratio > 0)) throw PreconditionError("radius ratio must be positive");
  if (!(t.objective.value > 0)) throw PreconditionError("objective threshold must be positive");
  if (!is_strongly_connected(t.base)) throw PreconditionError("base layer is not strongly connected");
  if (t.symmetric && !t.base.is_symmetric())
    throw PreconditionError("symmetric search needs a symmetric base layer");

  SynthResult r;
  const Evaluator eval(t.base, t.radius_ratio);
  if (t.objective.kind == SynthObjective::Kind::social_distancing) {
    Candidate c{synth_social_distancing(t.base, t.objective.value).dense()};
    eval.evaluate(c);
    r.net = assemble(t.base, c);
    r.psi_sa = c.psi_sa;
    r.psi_as = c.psi_as;
    r.lambda_ratio = c.lambda_ratio;
    r.met = true;
    return r;
  }

  const int n = t.base.size();
  if (n < 3) throw PreconditionError("Psi search needs at least 3 nodes");
  std::mt19937_64 rng(t.seed);
  // Start from the base support with fresh weights: the intersection graph is
  // then strongly connected, so the pair is M-connected from step 0.
  Candidate cur{Matrix::Zero(n, n)};
  std::uniform_real_distribution<double> fresh(0.5, 1.5);
  for (const Edge& e : t.base.edges()) {
    if (t.symmetric && e.source > e.target) continue;
    cur.a(e.source, e.target) = fresh(rng);
    if (t.symmetric) cur.a(e.target, e.source) = cur.a(e.source, e.target);
  }
  if (!eval.evaluate(cur)) throw NumericalError("starting layer failed evaluation");

  std::uniform_int_distribution<int> node(0, n - 1);
  std::uniform_real_distribution<double> factor(0.8, 1.2);
  std::bernoulli_distribution rewire(0.5);
  auto random_arc = [&](const Matrix& a) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a(i, j) > 0 && (!t.symmetric || i < j)) arcs.emplace_back(i, j);
    return arcs[std::uniform_int_distribution<std::size_t>(0, arcs.size() - 1)(rng)];
  };

  int step = 0;
  while (!met(t.objective, cur) && step < t.max_steps) {
    ++step;
    Candidate next{cur.a};
    const auto [i, j] = random_arc(next.a);
    if (rewire(rng)) {
      const int k = node(rng);
      if (k == i || k == j || next.a(i, k) > 0) {
        r.log.push_back({step, cur.psi_sa, cur.psi_as, cur.lambda_ratio, false});
        continue;
      }
      next.a(i, k) = next.a(i, j);
      next.a(i, j) = 0;
      if (t.symmetric) {
        next.a(k, i) = next.a(i, k);
        next.a(j, i) = 0;
      }
    } else {
      next.a(i, j) *= factor(rng);
      if (t.symmetric) next.a(j, i) = next.a(i, j);
    }
    const bool ok = eval.evaluate(next) &&
                    score(t.objective, next) < score(t.objective, cur) - kStrictImprovement &&
                    is_m_connected(assemble(t.base, next));
    if (ok) cur = std::move(next);
    r.log.push_back({step, cur.psi_sa, cur.psi_as, cur.lambda_ratio, ok});
  }

  r.net = assemble(t.base, cur);
  // Recompute on the emitted network so the reported values match the output exactly.
  const auto ts = spectral_triple(r.net.layer_s().matrix());
  const auto ta = spectral_triple(r.net.layer_a().matrix());
  r.psi_sa = psi_from_triple(ts, r.net.layer_s().matrix(), r.net.layer_a().matrix());
  r.psi_as = psi_from_triple(ta, r.net.layer_a().matrix(), r.net.layer_s().matrix());
  r.lambda_ratio = ta.lambda1 / ts.lambda1;
  r.met = t.objective.kind == SynthObjective::Kind::psi_sa_below ? r.psi_sa < t.objective.value
                                                                 : r.psi_as > t.objective.value;
  r.steps = step;
  return r;
}

void write_search_log_csv(std::ostream& out, const std::vector<SearchStep>& log) {
  out.precision(17);
  out << "step,psi_sa,psi_as,lambda_ratio,accepted\n";
  for (const auto& s : log)
    out << s.step << ',' << s.psi_sa << ',' << s.psi_as << ',' << s.lambda_ratio << ','
        << (s.accepted ? 1 : 0) << '\n';
}

}  // namespace acsais
