#include "tcc/amp_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace tcc {

namespace {

constexpr double kTieBand = 1e-12;  // relative band inside which a decision counts as tied

double rel_slack(double scale) { return kTieBand * std::max(1.0, std::fabs(scale)); }

void validate_config(const DecoderConfig& cfg) {
  if (!(cfg.kappa > 0.0 && cfg.kappa <= 1.0)) throw std::invalid_argument("decoder config: kappa must be in (0,1]");
  if (cfg.delta_max && !(*cfg.delta_max > 0.0)) throw std::invalid_argument("decoder config: delta_max must be > 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("decoder config: max_iter must be >= 1");
  if (cfg.backtrack_limit < 0) throw std::invalid_argument("decoder config: backtrack_limit must be >= 0");
  bool has_one = false;
  for (double rho : cfg.rho_grid) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("decoder config: rho values must be positive");
    if (rho == 1.0) has_one = true;
  }
  if (!has_one) throw std::invalid_argument("decoder config: rho_grid must contain 1");
}

const PairMarginals& tables_of(DecoderState& state, const IntersectionCode& code) {
  if (!state.tables) state.tables = pair_marginals(code, state.lambda, state.w1, state.w2);
  return *state.tables;
}

struct Decision {
  BinaryWord word;
  bool tied = false;
  std::vector<double> soft;
};

Decision decide(const PairMarginals& pm) {
  const int n = pm.mt1.n();
  std::vector<Symbol> symbols(n);
  Decision d;
  d.soft.resize(n);
  for (int j = 0; j < n; ++j) {
    const double plus = pm.mt1.at(j, +1) + pm.mt2.at(j, +1);
    const double minus = pm.mt1.at(j, -1) + pm.mt2.at(j, -1);
    if (plus == kNegInf && minus == kNegInf) {
      d.tied = true;
      d.soft[j] = 0.0;
      symbols[j] = +1;
      continue;
    }
    d.soft[j] = plus - minus;  // may be +-inf under pinning
    const bool one_sided = plus == kNegInf || minus == kNegInf;
    if (!one_sided && std::fabs(plus - minus) <= kTieBand * std::max({1.0, std::fabs(plus), std::fabs(minus)}))
      d.tied = true;
    symbols[j] = plus >= minus ? +1 : -1;
  }
  d.word = BinaryWord(std::move(symbols));
  return d;
}

}  // namespace

const char* to_string(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::success: return "success";
    case DecodeStatus::iteration_limit: return "iteration_limit";
    case DecodeStatus::stalled: return "stalled";
  }
  return "?";
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,step_kind,log_xi,log_p_est,J,accepted_factor\n";
  char buf[160];
  for (const TraceRow& row : trace) {
    std::snprintf(buf, sizeof buf, "%d,%s,%.12g,%.12g,%.12g,%.12g\n", row.iteration, row.step_kind.c_str(),
                  row.log_xi, row.log_p_est, row.objective, row.accepted_factor);
    out << buf;
  }
}

PairMarginals pair_marginals(const IntersectionCode& code, double lambda,
                             const std::vector<double>& w1, const std::vector<double>& w2) {
  PairMarginals pm{forward_backward(code.trellis1, scaled_weights(lambda, w1)),
                   forward_backward(code.trellis2, scaled_weights(lambda, w2)), kNegInf};
  pm.log_xi = log_xi_total(pm.mt1, pm.mt2);
  return pm;
}

DecoderState init_state(const IntersectionCode& code, const ChannelModel& channel, const ReceivedWord& r) {
  if (static_cast<int>(r.size()) != code.n) throw std::invalid_argument("init_state: received word length mismatch");
  channel.check_received(r);
  DecoderState st;
  st.r = r;
  st.lambda = channel.lambda();
  st.w1.resize(r.size());
  st.w2.resize(r.size());
  st.log_gamma_p_best = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    st.w1[j] = r[j] / 2.0;
    st.w2[j] = r[j] / 2.0;
    st.log_gamma_p_best += std::fabs(r[j]);
  }
  return st;
}

double transfer_for_split(const XiSplit& split, double lambda, double cap) {
  if (!(std::isfinite(lambda) && lambda > 0)) return 0.0;  // uninformative or pinned channel
  const bool m1_empty = split.log_xi_m1 == kNegInf;
  const bool p1_empty = split.log_xi_p1 == kNegInf;
  if (m1_empty && p1_empty) return 0.0;
  if (p1_empty) return cap;
  if (m1_empty) return -cap;
  return std::clamp((split.log_xi_m1 - split.log_xi_p1) / (4.0 * lambda), -cap, cap);
}

DecoderState delta_step(const DecoderState& state, const IntersectionCode& code, const DecoderConfig& config) {
  if (state.iter % 2 != 0) throw std::invalid_argument("delta_step: iteration index must be even");
  DecoderState next = state;
  const PairMarginals& base = tables_of(next, code);
  const double log_xi_before = base.log_xi;
  const int n = code.n;

  std::vector<double> transfer(n, 0.0);
  bool all_zero = true;
  if (std::isfinite(state.lambda) && state.lambda > 0) {
    const double cap = config.delta_max ? *config.delta_max : 10.0 / state.lambda;
    for (int j = 0; j < n; ++j) {
      transfer[j] = transfer_for_split(xi_split(base.mt1, base.mt2, j), state.lambda, cap);
      all_zero = all_zero && transfer[j] == 0.0;
    }
  }

  bool applied = false;
  double factor = config.kappa;
  if (!all_zero) {
    for (int attempt = 0; attempt <= config.backtrack_limit; ++attempt) {
      std::vector<double> w1c(n), w2c(n);
      for (int j = 0; j < n; ++j) {
        w1c[j] = state.w1[j] + factor * transfer[j];
        w2c[j] = state.w2[j] - factor * transfer[j];
      }
      PairMarginals cand = pair_marginals(code, state.lambda, w1c, w2c);
      if (cand.log_xi <= log_xi_before + rel_slack(log_xi_before)) {
        next.w1 = std::move(w1c);
        next.w2 = std::move(w2c);
        next.tables = std::move(cand);
        applied = true;
        break;
      }
      factor *= 0.5;
    }
  }
  next.iter = state.iter + 1;
  next.last = {"delta", next.tables->log_xi, applied ? factor : 0.0, !applied};
  return next;
}

DecoderState rho_step(const DecoderState& state, const IntersectionCode& code, const DecoderConfig& config) {
  if (state.iter % 2 != 1) throw std::invalid_argument("rho_step: iteration index must be odd");
  DecoderState next = state;
  const PairMarginals& base = tables_of(next, code);

  const bool normalized = std::isinf(state.lambda);
  auto objective_at = [&](double rho, double log_xi) {
    return (normalized ? 0.0 : rho * state.lambda * state.log_gamma_p_best) - log_xi;
  };

  double best_rho = 1.0;
  double best_j = objective_at(1.0, base.log_xi);
  PairMarginals best_tables = base;

  std::set<double> grid(config.rho_grid.begin(), config.rho_grid.end());
  for (double rho : grid) {
    if (rho == 1.0) continue;
    std::vector<double> w1c(state.w1), w2c(state.w2);
    for (double& v : w1c) v *= rho;
    for (double& v : w2c) v *= rho;
    PairMarginals cand = pair_marginals(code, state.lambda, w1c, w2c);
    const double j_cand = objective_at(rho, cand.log_xi);
    if (j_cand > best_j + rel_slack(best_j)) {
      best_rho = rho;
      best_j = j_cand;
      best_tables = std::move(cand);
    }
  }

  if (best_rho != 1.0) {
    for (double& v : next.w1) v *= best_rho;
    for (double& v : next.w2) v *= best_rho;
    next.log_gamma_p_best *= best_rho;
  }
  next.tables = std::move(best_tables);
  next.iter = state.iter + 1;
  next.last = {"rho", next.tables->log_xi, best_rho, best_rho == 1.0};
  return next;
}

BinaryWord hard_decision(const DecoderState& state, const IntersectionCode& code) {
  DecoderState copy = state;
  return decide(tables_of(copy, code)).word;
}

DecodeResult decode(const IntersectionCode& code, const ChannelModel& channel, const ReceivedWord& r,
                    const DecoderConfig& config) {
  validate_config(config);
  DecoderState state = init_state(code, channel, r);

  DecodeResult result;
  auto push_trace = [&](const DecoderState& st) {
    TraceRow row;
    row.iteration = st.iter;
    row.step_kind = st.last.kind;
    row.log_xi = st.last.log_xi;
    row.log_p_est = st.log_p_est_nat();
    row.objective = row.log_p_est - row.log_xi;
    row.accepted_factor = st.last.factor;
    result.trace.push_back(std::move(row));
  };

  state.last.log_xi = tables_of(state, code).log_xi;
  push_trace(state);

  int consecutive_noops = 0;
  while (true) {
    const Decision d = decide(*state.tables);
    result.c_hat = d.word;
    result.soft = d.soft;
    result.iterations = state.iter;
    if (!d.tied && contains(code.trellis1, d.word) && contains(code.trellis2, d.word)) {
      result.status = DecodeStatus::success;
      return result;
    }
    if (consecutive_noops >= 4) {  // two whole transfer+rescale rounds without change
      result.status = DecodeStatus::stalled;
      return result;
    }
    if (state.iter >= config.max_iter) {
      result.status = DecodeStatus::iteration_limit;
      return result;
    }
    state = state.iter % 2 == 0 ? delta_step(state, code, config) : rho_step(state, code, config);
    push_trace(state);
    consecutive_noops = state.last.no_op ? consecutive_noops + 1 : 0;
  }
}

}  // namespace tcc
