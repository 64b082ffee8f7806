#include "tcc/marginals.hpp"

#include <cmath>
#include <stdexcept>

namespace tcc {

WeightVector scaled_weights(double lambda, const std::vector<double>& w) {
  WeightVector out(w.size());
  if (std::isinf(lambda)) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] > 0) out[j].pin = +1;
      else if (w[j] < 0) out[j].pin = -1;
    }
    return out;
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!std::isfinite(w[j])) throw std::invalid_argument("scaled_weights: weights must be finite");
    out[j].mu = lambda * w[j];
  }
  return out;
}

MarginalTable forward_backward(const Trellis& trellis, const WeightVector& weights) {
  if (trellis.n == 0) throw std::invalid_argument("forward_backward: empty trellis");
  if (static_cast<int>(weights.size()) != trellis.n)
    throw std::invalid_argument("forward_backward: weight length does not match trellis");

  std::vector<std::vector<double>> alpha(trellis.n + 1), beta(trellis.n + 1);
  alpha[0].assign(trellis.level_sizes[0], 0.0);
  for (int t = 0; t < trellis.n; ++t) {
    alpha[t + 1].assign(trellis.level_sizes[t + 1], kNegInf);
    const SymbolWeight& sw = weights[trellis.positions[t]];
    for (const TrellisEdge& e : trellis.sections[t]) {
      const double w = edge_log_weight(sw, e.label);
      alpha[t + 1][e.to] = log_add(alpha[t + 1][e.to], alpha[t][e.from] + w);
    }
  }
  beta[trellis.n].assign(trellis.level_sizes[trellis.n], 0.0);
  for (int t = trellis.n - 1; t >= 0; --t) {
    beta[t].assign(trellis.level_sizes[t], kNegInf);
    const SymbolWeight& sw = weights[trellis.positions[t]];
    for (const TrellisEdge& e : trellis.sections[t]) {
      const double w = edge_log_weight(sw, e.label);
      beta[t][e.from] = log_add(beta[t][e.from], beta[t + 1][e.to] + w);
    }
  }

  MarginalTable mt;
  mt.per_position.assign(trellis.n, {kNegInf, kNegInf});
  LogAccumulator total;
  for (std::int32_t s = 0; s < trellis.level_sizes[trellis.n]; ++s) total.add(alpha[trellis.n][s]);
  mt.total = total.value();
  for (int t = 0; t < trellis.n; ++t) {
    const int pos = trellis.positions[t];
    const SymbolWeight& sw = weights[pos];
    LogAccumulator acc[2];
    for (const TrellisEdge& e : trellis.sections[t]) {
      const double w = edge_log_weight(sw, e.label);
      acc[e.label == +1 ? 1 : 0].add(alpha[t][e.from] + w + beta[t + 1][e.to]);
    }
    mt.per_position[pos] = {acc[0].value(), acc[1].value()};
  }
  return mt;
}

XiSplit xi_split(const MarginalTable& mt1, const MarginalTable& mt2, int j) {
  if (mt1.n() != mt2.n()) throw std::invalid_argument("xi_split: tables have different lengths");
  if (j < 0 || j >= mt1.n()) throw std::invalid_argument("xi_split: position out of range");
  XiSplit s;
  s.log_xi_m1 = mt1.at(j, -1) + mt2.at(j, +1);
  s.log_xi_p1 = mt1.at(j, +1) + mt2.at(j, -1);
  s.log_xi_0 = log_add(mt1.at(j, -1) + mt2.at(j, -1), mt1.at(j, +1) + mt2.at(j, +1));
  return s;
}

double log_xi_total(const MarginalTable& mt1, const MarginalTable& mt2) {
  if (mt1.n() != mt2.n()) throw std::invalid_argument("log_xi_total: tables have different lengths");
  return mt1.total + mt2.total;
}

}  // namespace tcc
