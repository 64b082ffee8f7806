#include "tcc/bp_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcc/logsum.hpp"

namespace tcc {

namespace {

constexpr double kExtrinsicClamp = 64.0;  // structural certainty saturates here
constexpr double kTieBand = 1e-12;

// posterior half-log-ratio minus the input weight at each position
void update_extrinsic(const MarginalTable& mt, const WeightVector& in, double damping,
                      std::vector<double>& ext) {
  for (int j = 0; j < mt.n(); ++j) {
    if (in[j].pin != 0) {  // certainty already carried by the pin
      ext[j] = 0.0;
      continue;
    }
    const double plus = mt.at(j, +1);
    const double minus = mt.at(j, -1);
    double fresh;
    if (plus == kNegInf && minus == kNegInf) fresh = 0.0;
    else if (minus == kNegInf) fresh = kExtrinsicClamp;
    else if (plus == kNegInf) fresh = -kExtrinsicClamp;
    else fresh = std::clamp((plus - minus) / 2.0 - in[j].mu, -kExtrinsicClamp, kExtrinsicClamp);
    ext[j] = (1.0 - damping) * fresh + damping * ext[j];
  }
}

WeightVector compose(const WeightVector& channel_part, const std::vector<double>& ext) {
  WeightVector out = channel_part;
  for (std::size_t j = 0; j < out.size(); ++j) out[j].mu += ext[j];
  return out;
}

}  // namespace

DecodeResult bp_decode(const IntersectionCode& code, const ChannelModel& channel, const ReceivedWord& r,
                       const BpConfig& config) {
  if (!(config.damping >= 0.0 && config.damping < 1.0))
    throw std::invalid_argument("bp config: damping must be in [0,1)");
  if (config.max_iter < 1) throw std::invalid_argument("bp config: max_iter must be >= 1");
  if (static_cast<int>(r.size()) != code.n) throw std::invalid_argument("bp_decode: received word length mismatch");
  channel.check_received(r);

  const int n = code.n;
  const WeightVector channel_part = scaled_weights(channel, r);
  std::vector<double> ext1(n, 0.0), ext2(n, 0.0);

  DecodeResult result;
  for (int it = 1; it <= config.max_iter; ++it) {
    const WeightVector in1 = compose(channel_part, ext2);
    const MarginalTable mt1 = forward_backward(code.trellis1, in1);
    update_extrinsic(mt1, in1, config.damping, ext1);

    const WeightVector in2 = compose(channel_part, ext1);
    const MarginalTable mt2 = forward_backward(code.trellis2, in2);
    update_extrinsic(mt2, in2, config.damping, ext2);

    std::vector<Symbol> symbols(n);
    std::vector<double> app(n);
    bool tied = false;
    for (int j = 0; j < n; ++j) {
      if (channel_part[j].pin != 0) {
        symbols[j] = channel_part[j].pin;
        app[j] = channel_part[j].pin * std::numeric_limits<double>::infinity();
        continue;
      }
      app[j] = channel_part[j].mu + ext1[j] + ext2[j];
      if (std::fabs(app[j]) <= kTieBand) tied = true;
      symbols[j] = app[j] >= 0 ? +1 : -1;
    }
    result.c_hat = BinaryWord(std::move(symbols));
    result.soft = std::move(app);
    result.iterations = it;

    TraceRow row;
    row.iteration = it;
    row.step_kind = "bp";
    row.log_xi = mt1.total + mt2.total;
    row.accepted_factor = config.damping;
    result.trace.push_back(std::move(row));

    if (!tied && contains(code.trellis1, result.c_hat) && contains(code.trellis2, result.c_hat)) {
      result.status = DecodeStatus::success;
      return result;
    }
  }
  result.status = DecodeStatus::iteration_limit;
  return result;
}

}  // namespace tcc
