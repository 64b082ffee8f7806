#ifndef TCC_CHANNEL_HPP
#define TCC_CHANNEL_HPP

#include <cstdint>
#include <string>

#include "tcc/word.hpp"

namespace tcc {

enum class ChannelKind { bsc, bec, awgn };

/// Memoryless binary-input channel with P(r|s) proportional to gamma^{r*s}.
/// The exponent scale lambda = ln(gamma) is what all log-domain computation
/// uses; for the erasure channel it is unbounded and reported as +infinity,
/// a marker that downstream code turns into hard symbol pins rather than
/// doing arithmetic with it.
class ChannelModel {
 public:
  /// crossover probability p in [0, 1/2]; p > 1/2 would flip the objective
  static ChannelModel bsc(double p);
  /// erasure probability p in [0, 1]
  static ChannelModel bec(double p);
  /// noise standard deviation sigma > 0
  static ChannelModel awgn(double sigma);

  /// "bsc:0.05", "bec:0.3", "awgn:0.8"
  static ChannelModel parse(const std::string& spec);

  ChannelKind kind() const { return kind_; }
  double param() const { return param_; }
  std::string spec() const;

  /// ln(gamma). BSC: ln sqrt((1-p)/p), positive below p = 1/2 and zero at it
  /// (p = 0 is a parameter error, use transmit-only there); BEC: +infinity;
  /// AWGN: 1/sigma^2.
  double lambda() const;

  /// L(r) = (1/2) ln(P(r|+1) / P(r|-1)) = lambda * r for all three channels.
  double llr(double r) const;

  /// Samples the per-symbol channel law i.i.d.; deterministic given the seed.
  ReceivedWord transmit(const BinaryWord& c, std::uint64_t seed) const;

  /// Throws unless r is in this channel's output alphabet.
  void check_received(const ReceivedWord& r) const;

 private:
  ChannelModel(ChannelKind k, double p) : kind_(k), param_(p) {}
  ChannelKind kind_;
  double param_;
};

}  // namespace tcc

#endif
