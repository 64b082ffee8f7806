#ifndef TCC_AMP_DECODER_HPP
#define TCC_AMP_DECODER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tcc/channel.hpp"
#include "tcc/marginals.hpp"
#include "tcc/trellis.hpp"
#include "tcc/word.hpp"

namespace tcc {

struct DecoderConfig {
  double kappa = 0.5;                 // scale applied to the simultaneous per-position transfer, (0,1]
  std::optional<double> delta_max;    // cap on each |delta_j|; default 10/lambda
  std::vector<double> rho_grid = {0.8, 0.9, 1.0, 1.1, 1.25, 1.5};  // must contain 1
  int max_iter = 200;
  int backtrack_limit = 20;           // kappa halvings per transfer step
};

enum class DecodeStatus { success, iteration_limit, stalled };
const char* to_string(DecodeStatus status);

struct TraceRow {
  int iteration = 0;
  std::string step_kind;       // "init", "delta", "rho", "bp"
  double log_xi = 0;
  double log_p_est = 0;
  double objective = 0;        // log_p_est - log_xi
  double accepted_factor = 0;  // applied kappa (0 when the transfer collapsed), chosen rho, or bp damping
};

/// CSV with header iteration,step_kind,log_xi,log_p_est,J,accepted_factor.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

struct DecodeResult {
  DecodeStatus status = DecodeStatus::iteration_limit;
  BinaryWord c_hat;
  int iterations = 0;
  std::vector<TraceRow> trace;
  std::vector<double> soft;  // per-symbol log-ratio the hard decision was taken from
};

/// Marginal tables of both constituents under the current weight split.
struct PairMarginals {
  MarginalTable mt1, mt2;
  double log_xi = kNegInf;
};

PairMarginals pair_marginals(const IntersectionCode& code, double lambda,
                             const std::vector<double>& w1, const std::vector<double>& w2);

/// Iteration state. The two weight vectors always satisfy
/// w1 + w2 = scale * r, where scale is the product of every rescaling factor
/// applied so far: transfer steps move weight between the constituents without
/// touching the sum, so each codeword's likelihood -- and in particular the
/// maximum-likelihood word -- is left untouched, and rescaling steps change
/// every codeword's likelihood monotonically.
struct DecoderState {
  ReceivedWord r;
  std::vector<double> w1, w2;
  double lambda = 0;             // ln(gamma); +infinity means erasure pinning
  double log_gamma_p_best = 0;   // best-codeword likelihood estimate, in units of lambda
  int iter = 0;

  struct StepInfo {
    std::string kind = "init";
    double log_xi = kNegInf;
    double factor = 1.0;
    bool no_op = false;
  } last;

  std::optional<PairMarginals> tables;  // cache of the marginals at (w1, w2)

  /// Natural-log estimate of the best codeword's likelihood. With infinite
  /// lambda everything is reported relative to the leading exponent, which
  /// the estimate itself attains, so the normalized value is 0.
  double log_p_est_nat() const { return std::isinf(lambda) ? 0.0 : lambda * log_gamma_p_best; }
};

/// w1 = w2 = r/2; the likelihood estimate starts at the attainable upper
/// bound sum_j |r_j| (in lambda units), tight exactly when sign(r) is a
/// codeword of both constituents.
DecoderState init_state(const IntersectionCode& code, const ChannelModel& channel, const ReceivedWord& r);

/// Per-position transfer from the split at j, clamped to [-cap, cap].
/// One-sided splits saturate at the cap; an empty or degenerate split gives 0.
double transfer_for_split(const XiSplit& split, double lambda, double cap);

/// Even-iteration step: computes all per-position transfers at once from the
/// current splits, applies kappa times the vector to (w1 += , w2 -=), and
/// backtracks by halving kappa until the pair sum did not increase. At
/// exhaustion the step degrades to a recorded no-op. The weight sum, and with
/// it every codeword's likelihood, is preserved.
DecoderState delta_step(const DecoderState& state, const IntersectionCode& code, const DecoderConfig& config);

/// Odd-iteration step: picks the grid factor maximizing
/// J(rho) = rho * log_p_est - log_xi(rho * w1, rho * w2), never worse than
/// rho = 1, and rescales both weight vectors and the estimate by it.
DecoderState rho_step(const DecoderState& state, const IntersectionCode& code, const DecoderConfig& config);

/// Symbol-wise comparison of the agreeing-pair masses: +1 iff
/// mt1[j][+1] + mt2[j][+1] >= mt1[j][-1] + mt2[j][-1], ties to +1.
BinaryWord hard_decision(const DecoderState& state, const IntersectionCode& code);

/// Full loop: alternate transfer and rescaling steps, test the hard decision
/// for membership in both constituents after every iteration, stop on
/// membership (only when no position was an exact tie -- an all-tied decision
/// does not single out a word), at the iteration budget, or when two whole
/// rounds in a row changed nothing.
DecodeResult decode(const IntersectionCode& code, const ChannelModel& channel, const ReceivedWord& r,
                    const DecoderConfig& config = {});

}  // namespace tcc

#endif
