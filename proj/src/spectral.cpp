#include "acsais/spectral.hpp"

#include "acsais/scc.hpp"

#include <cmath>
#include <vector>

namespace acsais {

double spectral_radius(const SparseMatrix& W, const PowerIterationOptions& opts) {
  if (W.rows() != W.cols()) throw PreconditionError("matrix must be square");
  detail::require_nonnegative(W);
  double rho = 0;
  std::vector<int> local(static_cast<std::size_t>(W.rows()), -1);
  for (const Block& block : strongly_connected_components(support_lists(W))) {
    if (block.size() == 1) {
      rho = std::max(rho, W.coeff(block[0], block[0]));
      continue;
    }
    for (std::size_t k = 0; k < block.size(); ++k) local[block[k]] = static_cast<int>(k);
    std::vector<Eigen::Triplet<double>> entries;
    for (int i : block)
      for (SparseMatrix::InnerIterator it(W, i); it; ++it)
        if (local[it.col()] >= 0 && it.value() != 0) entries.emplace_back(local[i], local[it.col()], it.value());
    SparseMatrix sub(static_cast<Index>(block.size()), static_cast<Index>(block.size()));
    sub.setFromTriplets(entries.begin(), entries.end());
    rho = std::max(rho, dominant_eigenpair(sub, Side::right, opts).value);
    for (int i : block) local[i] = -1;
  }
  return rho;
}

PerturbationCoefficients threshold_perturbation(const MultilayerNetwork& net, Regime regime,
                                                const PowerIterationOptions& opts) {
  const SparseMatrix& ws = net.layer_s().matrix();
  const SparseMatrix& wa = net.layer_a().matrix();
  const SparseMatrix& base = regime == Regime::small_kappa ? ws : wa;
  const SparseMatrix& other = regime == Regime::small_kappa ? wa : ws;
  const auto triple = spectral_triple(base, opts);
  const double p = psi_from_triple(triple, base, other);
  return {1.0 / triple.lambda1, (p - 1.0) / triple.lambda1};
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::monotone: return "monotone";
    case Scenario::overshoot: return "overshoot";
    case Scenario::undershoot: return "undershoot";
    case Scenario::mixed: return "mixed";
  }
  return "unknown";
}

ScenarioReport classify_scenario(const MultilayerNetwork& net, const PowerIterationOptions& opts) {
  const SparseMatrix& ws = net.layer_s().matrix();
  const SparseMatrix& wa = net.layer_a().matrix();
  const auto ts = spectral_triple(ws, opts);
  const auto ta = spectral_triple(wa, opts);

  ScenarioReport r;
  r.psi_sa = psi_from_triple(ts, ws, wa);
  r.psi_as = psi_from_triple(ta, wa, ws);
  r.lambda_s = ts.lambda1;
  r.lambda_a = ta.lambda1;
  r.radius_ordered = r.lambda_s > r.lambda_a;

  if (std::abs(r.psi_sa - 1.0) < kScenarioTieBand || std::abs(r.psi_as - 1.0) < kScenarioTieBand) {
    r.scenario = Scenario::mixed;
    r.degenerate = true;
    r.note = "a Psi value equals 1 within 1e-9; the first-order test is inconclusive";
    return r;
  }
  const bool under = r.psi_sa < 1.0;
  const bool over = r.psi_as > 1.0;
  if (under && over) {
    r.scenario = Scenario::mixed;
    r.note = "both undershoot and overshoot conditions hold";
  } else if (under) {
    r.scenario = Scenario::undershoot;
  } else if (over) {
    r.scenario = Scenario::overshoot;
  } else {
    r.scenario = Scenario::monotone;
  }
  if (!r.radius_ordered) {
    if (!r.note.empty()) r.note += "; ";
    r.note += "lambda1(W_S) <= lambda1(W_A): alert layer is not the more robust one";
  }
  return r;
}

}  // namespace acsais
